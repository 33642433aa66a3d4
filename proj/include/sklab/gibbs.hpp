#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "sklab/disorder.hpp"
#include "sklab/spin_distribution.hpp"

namespace sklab {

// Mixed-Hamiltonian parameters. The Boltzmann exponent for one replica is
//   sqrt(t) H_n(s) + sqrt(x) Lambda_n(s) + h sum_i s_i
//     - (n/2) (x qbar(s,s) + t qbar^2(s,s))
// with the compensation terms keeping every weight of disorder-expectation 1.
struct GibbsParams {
    double t{};
    double x{};
    double h{};
};

struct GibbsReport {
    double log_z{};
    double mean_overlap{};     // <qbar(sigma,tau)> over two independent replicas
    double mean_overlap_sq{};  // <qbar^2(sigma,tau)>
    std::optional<double> coupled_log_z{};
    std::vector<double> magnetization;  // <sigma_i>
    std::vector<double> pair_moment;    // <sigma_i sigma_j>, packed i <= j (growing-minor order)
};

class BudgetError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Hard cap on enumeration terms (single: atoms^n, coupled: atoms^(2n)).
inline constexpr std::uint64_t kEnumerationBudget = 1ull << 24;

void check_single_budget(const SpinDistribution& dist, int n);
void check_coupled_budget(const SpinDistribution& dist, int n);

// sqrt(2/n) sum_{i<j} g_ij s_i s_j + (1/sqrt(n)) sum_i g_ii s_i^2
double hamiltonian_sk(const DisorderSample& d, std::span<const double> sigma);

// Lambda_n(s) = sum_i J_i s_i
double linear_field(const DisorderSample& d, std::span<const double> sigma);

// Exact log partition function by atom-weighted enumeration (log-sum-exp protected).
double log_z_exact(const DisorderSample& d, const SpinDistribution& dist, const GibbsParams& p);

// Single-replica enumeration with magnetizations m_i and correlations m_ij;
// two-replica overlap moments follow from independence of replicas:
// <qbar> = (1/n) sum_i m_i^2, <qbar^2> = (1/n^2) sum_ij m_ij^2.
GibbsReport gibbs_overlap_moments(const DisorderSample& d, const SpinDistribution& dist,
                                  const GibbsParams& p);

enum class CouplingForm {
    QuadraticOverlap,  // lambda * n * (q - qbar(sigma,tau))^2
    LinearOverlap,     // lambda * n * qbar(sigma,tau)   (test mode; factorizes at t=0)
};

struct CoupledReport {
    double log_z{};       // log Ztilde of the coupled pair
    double overlap{};     // <qbar_12>
    double overlap_sq{};  // <qbar_12^2>
    double sq_dev{};      // <(q - qbar_12)^2>
    std::vector<double> magnetization;  // <sigma_i> under the coupled measure
    std::vector<double> pair_moment;    // <sigma_i sigma_j>, packed i <= j

    // Cross-pair brackets over two independent coupled pairs sharing disorder
    // (the four-replica quantities qbar_13 = qbar(sigma, sigma')):
    double cross_overlap() const;     // <qbar_13>   = (1/n) sum_i m_i^2
    double cross_overlap_sq() const;  // <qbar_13^2> = (1/n^2) sum_ij M_ij^2
};

// Exact enumeration of the two-replica system V(sigma) + V(tau) + coupling.
CoupledReport coupled_pair_report(const DisorderSample& d, const SpinDistribution& dist,
                                  const GibbsParams& p, double lambda, double q,
                                  CouplingForm form = CouplingForm::QuadraticOverlap,
                                  bool with_moments = true);

}
