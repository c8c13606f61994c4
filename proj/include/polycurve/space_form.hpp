#pragma once

#include "polycurve/errors.hpp"

namespace polycurve {

/// Complete simply connected space of constant sectional curvature K.
/// Embedded computations are available for the unit sphere (K = 1); other
/// curvatures are served by the constant-curvature Frenet formulas.
template <typename Scalar>
struct SpaceForm {
  Scalar curvature{1};
  int dim{3};

  static SpaceForm unit_sphere(int dim = 3) { return SpaceForm{Scalar(1), dim}; }

  bool is_unit_sphere() const { return curvature == Scalar(1); }

  void require_unit_sphere(const char* what) const {
    if (!is_unit_sphere())
      throw InvalidArgument(std::string(what) +
                            " uses the sphere embedding and requires curvature K = 1");
  }
};

using SpaceFormd = SpaceForm<double>;

}  // namespace polycurve
