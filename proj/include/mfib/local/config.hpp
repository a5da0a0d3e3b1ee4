#pragma once

#include <cstdint>
#include <string>

#include "mfib/error.hpp"

namespace mfib::local {

struct NumericConfig {
  double tol_identity = 1e-12;
  double tol_geom = 1e-6;
  int grid = 400;
  double ode_step = 1e-3;
  int quadrature_points = 16;  // Gauss-Legendre panels before refinement
  double eps = 0.01;           // perturbation parameter of F_eps
  std::uint64_t seed = 7;
  double fd_step = 1e-4;  // central-difference step for Jacobian minors

  void validate() const {
    auto pos = [](double v, const char* name) {
      if (!(v > 0)) throw InvalidArgument(std::string("config: ") + name + " must be positive");
    };
    pos(tol_identity, "tol_identity");
    pos(tol_geom, "tol_geom");
    pos(ode_step, "ode_step");
    pos(fd_step, "fd_step");
    pos(eps, "eps");
    if (grid < 8) throw InvalidArgument("config: grid must be at least 8");
    if (quadrature_points < 1) throw InvalidArgument("config: quadrature_points must be positive");
  }
};

}  // namespace mfib::local
