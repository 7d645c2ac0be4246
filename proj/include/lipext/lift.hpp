#pragma once

#include "lipext/measures.hpp"

namespace lipext {

// n := floor(log2 D) + 6. Floor computed by exact power-of-two comparison.
int choose_n(double doubling);
int floor_log2(double x); // x >= 1

// volume of the unit l1^n ball, 2^n / n!
double cross_polytope_volume(int n);

// certified thresholds for the lifted-space bounds
double dilation_threshold();          // (6/5) e^4
double consistency_threshold_factor();      // 1 + 4e/3
double radial_regularity_bound(int n);  // A_n = (6/5) e^4 n

// The augmented space M x l1^n carrying mu_m (x) lambda_n. Never materialized
// as a point set: ball masses on it are translation-invariant in the R^n
// coordinate and have exact closed-form radial profiles over the atomic base,
//   mu(B_R) = gamma_n * sum_{d(m,m') < R} w_m(m') (R - d(m,m'))^n.
class LiftedSpace {
public:
    LiftedSpace(const MeasureFamily& base, int n); // n >= 2

    const MeasureFamily& base() const { return *base_; }
    int n() const { return n_; }
    double gamma_n() const { return gamma_; }
    double beta_n() const { return beta_; }
    double base_doubling() const { return base_doubling_; }

    double ball_mass(PointId m, double radius) const;

    // lifted |mu_m1 - mu_m2|(B_R(center)); center_choice is 1 or 2
    double tv_ball(PointId m1, PointId m2, int center_choice, double radius) const;

private:
    const MeasureFamily* base_;
    int n_;
    double gamma_, beta_;
    double base_doubling_;
};

struct CertReport {
    double sup_found = 0.0; // grid supremum: a certified lower bound of the true sup
    double bound = 0.0;     // the certified upper bound
    bool pass = false;      // sup_found <= bound + slack
    std::size_t evaluations = 0;
};

// critical radii of the base together with a geometric grid up to r_max
std::vector<double> default_radius_grid(const MeasureFamily& family, double r_max,
                                        std::size_t samples = 512);

// D_n(1 + 1/n) <= (6/5) e^4, premise n >= floor(log2 D) + 5
CertReport certify_dilation(const LiftedSpace& lift, std::span<const double> grid);

// raw grid supremum of the lifted consistency ratio, radii capped at r_max
double lifted_consistency_sup(const LiftedSpace& lift, std::span<const double> grid,
                              double r_max);

// C_n <= (1 + 4e/3) n C, with C the base consistency at the same truncation
CertReport certify_consistency(const LiftedSpace& lift, std::span<const double> grid,
                               double base_consistency, double r_max);

// mu(B_R2) - mu(B_R1) <= A_n mu(B_R2)(R2 - R1)/R2, premise n >= floor(log2 D) + 6;
// evaluates all grid pairs R1 < R2 plus near-coincident pairs probing the
// derivative regime
CertReport certify_radial_regularity(const LiftedSpace& lift, std::span<const double> grid);

} // namespace lipext
