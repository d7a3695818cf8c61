#pragma once

#include "vassiliev/error.hpp"
#include "vassiliev/rational.hpp"
#include "vassiliev/gauss_code.hpp"
#include "vassiliev/singular_code.hpp"
#include "vassiliev/reidemeister.hpp"
#include "vassiliev/knot_table.hpp"
#include "vassiliev/diagrams.hpp"
#include "vassiliev/pattern.hpp"
#include "vassiliev/matcher.hpp"
#include "vassiliev/coordinates.hpp"
#include "vassiliev/weight_systems.hpp"
#include "vassiliev/invariants.hpp"
#include "vassiliev/vassiliev_module.hpp"
