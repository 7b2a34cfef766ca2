#pragma once

#include "dbar/fields.hpp"

namespace dbar {

/// exp(-1/t) for t>0, 0 otherwise (jet version branches on the value).
Jet jet_expm1t(const Jet& t);

/// Smoothstep s(u): 1 for u<=0, 0 for u>=1, C^infty monotone in between.
Jet jet_smoothstep(const Jet& u);
double smoothstep(double u);

/// Plain radial bump b(|x-c|^2/r^2), =1 at the center, supported in B(c,r).
AnalyticField af_radial_bump(int dim, const Eigen::VectorXd& c, double r);

/// Plateau cutoff: ==1 on B(c, r_in) exactly, supported in B(c, r_out).
AnalyticField af_plateau_bump(int dim, const Eigen::VectorXd& c, double r_in, double r_out);

}  // namespace dbar
