#ifndef JWR_JITTER_HPP
#define JWR_JITTER_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace jwr {

// Symmetric zero-mean perturbation distribution on [-t_p, t_p] (continuous)
// or {-t_p, ..., t_p} (discrete).
//
// `uniform` covers the whole admissible support. `explicit_spec` carries
// either integer point masses (discrete mode) or a piecewise-constant
// density (continuous mode); which one applies is decided by the mode of
// the owning SamplingConfig.
struct JitterSpec {
  enum class Kind { uniform, explicit_spec };

  struct Piece {
    double lo = 0.0;
    double hi = 0.0;
    double density = 0.0;
  };

  Kind kind = Kind::uniform;
  // Discrete explicit: (offset, mass) pairs, sorted by offset after
  // validation. Offsets are integers in [-t_p, t_p].
  std::vector<std::pair<std::int64_t, double>> masses;
  // Continuous explicit: disjoint half-open pieces covering part of
  // [-t_p, t_p]; density is constant on each piece.
  std::vector<Piece> pieces;

  static JitterSpec uniform_jitter() { return {}; }

  static JitterSpec discrete_masses(
      std::vector<std::pair<std::int64_t, double>> m) {
    JitterSpec s;
    s.kind = Kind::explicit_spec;
    s.masses = std::move(m);
    return s;
  }

  static JitterSpec piecewise_density(std::vector<Piece> p) {
    JitterSpec s;
    s.kind = Kind::explicit_spec;
    s.pieces = std::move(p);
    return s;
  }

  bool is_uniform() const { return kind == Kind::uniform; }
};

}  // namespace jwr

#endif  // JWR_JITTER_HPP
