#ifndef PDISCO_LIBRARY_HPP
#define PDISCO_LIBRARY_HPP

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "pdisco/candidates.hpp"
#include "pdisco/model.hpp"
#include "pdisco/surrogate.hpp"

namespace pdisco {

// Expected candidate values, their variances over the weight posterior, the
// expected time derivative, and per-point uncertainty weights at d
// collocation points.
struct DerivativeLibrary {
    Eigen::MatrixXd X;      // d x n_c, E[candidate]
    Eigen::MatrixXd Z;      // d x n_c, Var[candidate] (population, 1/n_s)
    Eigen::VectorXd y;      // d, E[f_t]
    Eigen::VectorXd gamma;  // d, uncertainty weights
    std::vector<std::array<double, 2>> points;
    CandidateSet candidates;
    int thinning = 1;
    std::uint64_t seed = 0;
    std::uint64_t source_hash = 0;

    void validate() const;
};

// d i.i.d. uniform draws on the domain rectangle, deterministic under seed.
std::vector<std::array<double, 2>> sample_collocation(const Domain& domain, std::size_t d,
                                                      std::uint64_t seed);

// Column-max-normalized row sums of the variance matrix. All-zero columns
// contribute nothing; the result is floored at kGammaFloor so the regression
// scaling 1/gamma stays defined (uniform floor = the unweighted convention).
inline constexpr double kGammaFloor = 1e-12;
Eigen::VectorXd uncertainty_weights(const Eigen::MatrixXd& Z);

// Evaluates jets for every (sample, point) pair and reduces them to
// expectations/variances in a fixed order. Candidate products are formed per
// sample before averaging. `thinning` strides over the weight samples.
DerivativeLibrary build_library(const SurrogateModel& model,
                                std::vector<std::array<double, 2>> points,
                                const CandidateSet& candidates, int thinning = 1,
                                int threads = 1);

// CSV export (one row per collocation point) plus a JSON metadata sidecar.
void save_library_csv(const std::string& csv_path, const std::string& sidecar_path,
                      const DerivativeLibrary& lib);

}  // namespace pdisco

#endif
