#pragma once

// Face structure of a Gauss code on its Carter surface, and a seeded
// generator of classical R1/R2 perturbations built on it.

#include <array>
#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "vassiliev/gauss_code.hpp"

namespace vassiliev {

/// Faces of the diagram as cycles of edge indices; edge i runs from passage i
/// to passage i+1 (cyclically). The diagram with no crossings has two faces
/// and no edges to list.
inline std::vector<std::vector<int>> diagram_faces(const GaussCode& code) {
  const int m = static_cast<int>(code.length());
  if (m == 0) return {{}, {}};
  // Dart 2i leaves passage i, dart 2i+1 arrives at passage i.
  auto out = [](int i) { return 2 * i; };
  auto in = [](int i) { return 2 * i + 1; };
  std::vector<int> rotation(static_cast<std::size_t>(2 * m));
  for (int c = 0; c < code.crossing_count(); ++c) {
    const int p = code.position(c, Role::kOver);
    const int q = code.position(c, Role::kUnder);
    // Counterclockwise order of the four half-edges around the crossing.
    std::array<int, 4> ring = code.sign(c) == Sign::kPlus ? std::array<int, 4>{out(p), out(q), in(p), in(q)}
                                                          : std::array<int, 4>{out(p), in(q), in(p), out(q)};
    for (int k = 0; k < 4; ++k) rotation[static_cast<std::size_t>(ring[k])] = ring[(k + 1) % 4];
  }
  auto twin = [&](int dart) { return dart % 2 == 0 ? in((dart / 2 + 1) % m) : out((dart / 2 + m - 1) % m); };
  auto edge_of = [&](int dart) { return dart % 2 == 0 ? dart / 2 : (dart / 2 + m - 1) % m; };

  std::vector<std::vector<int>> faces;
  std::vector<bool> seen(static_cast<std::size_t>(2 * m), false);
  for (int start = 0; start < 2 * m; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> face;
    for (int d = start; !seen[static_cast<std::size_t>(d)]; d = rotation[static_cast<std::size_t>(twin(d))]) {
      seen[static_cast<std::size_t>(d)] = true;
      face.push_back(edge_of(d));
    }
    faces.push_back(std::move(face));
  }
  return faces;
}

/// Genus of the closed surface the diagram naturally embeds in. Zero exactly
/// for diagrams drawable in the plane.
inline int surface_genus(const GaussCode& code) {
  const int n = code.crossing_count();
  const int faces = static_cast<int>(diagram_faces(code).size());
  return (2 + n - faces) / 2;
}

inline bool is_planar(const GaussCode& code) { return surface_genus(code) == 0; }

namespace detail {

inline bool has_bigon(const GaussCode& code, int edge_a, int edge_b) {
  for (const auto& face : diagram_faces(code)) {
    if (face.size() == 2 && ((face[0] == edge_a && face[1] == edge_b) || (face[0] == edge_b && face[1] == edge_a))) {
      return true;
    }
  }
  return false;
}

}  // namespace detail

template <class Rng>
GaussCode random_r1(const GaussCode& code, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pos(0, code.length());
  std::bernoulli_distribution coin;
  const std::size_t at = pos(rng);
  const Sign sign = coin(rng) ? Sign::kPlus : Sign::kMinus;
  const Role role = coin(rng) ? Role::kOver : Role::kUnder;
  return apply_r1(code, at, sign, role);
}

/// Draws R2 insertions until one keeps a planar input planar with the new
/// crossings bounding a bigon face, i.e. a genuine classical R2 move.
template <class Rng>
std::optional<GaussCode> random_r2(const GaussCode& code, Rng& rng, int max_tries = 256) {
  std::uniform_int_distribution<std::size_t> pos(0, code.length());
  std::bernoulli_distribution coin;
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    std::size_t a = pos(rng);
    std::size_t b = pos(rng);
    if (a > b) std::swap(a, b);
    const R2Case kase = coin(rng) ? R2Case::kAntiparallel : R2Case::kParallel;
    const Sign sign = coin(rng) ? Sign::kPlus : Sign::kMinus;
    GaussCode out = apply_r2(code, a, b, kase, sign);
    if (is_planar(out) && detail::has_bigon(out, static_cast<int>(a), static_cast<int>(b) + 2)) return out;
  }
  return std::nullopt;
}

/// `moves` random classical Reidemeister moves (R1 or R2, even odds).
template <class Rng>
GaussCode random_perturbation(GaussCode code, Rng& rng, int moves) {
  std::bernoulli_distribution coin;
  for (int i = 0; i < moves; ++i) {
    if (coin(rng)) {
      if (auto next = random_r2(code, rng)) {
        code = std::move(*next);
        continue;
      }
    }
    code = random_r1(code, rng);
  }
  return code;
}

}  // namespace vassiliev
