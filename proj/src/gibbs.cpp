#include "sklab/gibbs.hpp"

#include <cmath>
#include <limits>

#include "sklab/stats.hpp"

namespace sklab {

namespace {

inline std::size_t packed_pos(int i, int j) {  // requires i <= j
    return static_cast<std::size_t>(j) * (j + 1) / 2 + i;
}

std::uint64_t enumeration_terms(int atoms, int sites) {
    std::uint64_t count = 1;
    for (int i = 0; i < sites; ++i) {
        if (count > kEnumerationBudget / static_cast<std::uint64_t>(atoms) + 1) return kEnumerationBudget + 1;
        count *= static_cast<std::uint64_t>(atoms);
    }
    return count;
}

void validate_params(const GibbsParams& p) {
    if (!(p.t >= 0.0) || !(p.x >= 0.0) || !std::isfinite(p.h))
        throw std::invalid_argument("GibbsParams: require t >= 0, x >= 0, finite h");
}

// Shared per-site coefficients of the one-replica exponent:
//   s   * (sqrt(x) J_i + h + pair field)
//   s^2 * (sqrt(t/n) g_ii - x/2)
// plus the non-additive tail -t/(2n) * (sum_i s_i^2)^2 applied at the leaf.
struct SiteCoefficients {
    int n{};
    double t_comp{};  // t/(2n)
    bool has_pair{};  // t > 0: pair fields need maintaining
    std::vector<double> lin, sq;
    std::vector<double> gs;  // sqrt(2t/n) g_ij, dense n*n, diagonal unused

    SiteCoefficients(const DisorderSample& d, const GibbsParams& p) {
        n = d.n;
        t_comp = p.t / (2.0 * n);
        has_pair = p.t > 0.0 && n > 1;
        const double sx = std::sqrt(p.x);
        const double diag = std::sqrt(p.t / n);
        const double pair = std::sqrt(2.0 * p.t / n);
        lin.resize(n);
        sq.resize(n);
        for (int i = 0; i < n; ++i) {
            lin[i] = sx * d.j_lin[i] + p.h;
            sq[i] = diag * d.g_at(i, i) - p.x / 2.0;
        }
        if (has_pair) {
            gs.assign(static_cast<std::size_t>(n) * n, 0.0);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    gs[static_cast<std::size_t>(i) * n + j] = gs[static_cast<std::size_t>(j) * n + i] =
                        pair * d.g_at(i, j);
        }
    }
};

class SingleEnumerator {
public:
    SingleEnumerator(const DisorderSample& d, const SpinDistribution& dist, const GibbsParams& p,
                     bool with_moments)
        : coef_(d, p), moments_(with_moments) {
        n_ = d.n;
        for (const auto& a : dist.atoms()) {
            s_.push_back(a.value);
            s2_.push_back(a.value * a.value);
            logw_.push_back(std::log(a.weight));
        }
        na_ = static_cast<int>(s_.size());
        field_.assign(static_cast<std::size_t>(n_ + 1) * n_, 0.0);
        sigma_.assign(n_, 0.0);
        if (moments_) {
            macc_.assign(n_, 0.0);
            pacc_.assign(packed_pos(0, n_), 0.0);
        }
    }

    void run() {
        descend(0, 0.0, 0.0);
        const double z = zacc_.value();
        log_z = max_a_ + std::log(z);
        if (moments_) {
            m1.resize(n_);
            m2.resize(pacc_.size());
            for (int i = 0; i < n_; ++i) m1[i] = macc_[i] / z;
            for (std::size_t k = 0; k < pacc_.size(); ++k) m2[k] = pacc_[k] / z;
        }
    }

    double log_z{};
    std::vector<double> m1, m2;

private:
    void descend(int level, double epart, double s2part) {
        if (level == n_) {
            leaf(epart - coef_.t_comp * s2part * s2part);
            return;
        }
        const double* row = &field_[static_cast<std::size_t>(level) * n_];
        const double drive = coef_.lin[level] + (coef_.has_pair ? row[level] : 0.0);
        const bool update_fields = coef_.has_pair && level + 1 < n_;
        double* next_row = &field_[static_cast<std::size_t>(level + 1) * n_];
        const double* gs_row = coef_.has_pair ? &coef_.gs[static_cast<std::size_t>(level) * n_] : nullptr;
        for (int k = 0; k < na_; ++k) {
            const double sv = s_[k];
            const double e2 = epart + logw_[k] + drive * sv + coef_.sq[level] * s2_[k];
            if (update_fields)
                for (int m = level + 1; m < n_; ++m) next_row[m] = row[m] + gs_row[m] * sv;
            if (moments_) sigma_[level] = sv;
            descend(level + 1, e2, s2part + s2_[k]);
        }
    }

    void leaf(double a) {
        if (a > max_a_) {
            const double scale = std::exp(max_a_ - a);
            zacc_.sum *= scale;
            zacc_.comp *= scale;
            if (moments_) {
                for (auto& v : macc_) v *= scale;
                for (auto& v : pacc_) v *= scale;
            }
            max_a_ = a;
        }
        const double w = std::exp(a - max_a_);
        zacc_.add(w);
        if (moments_) {
            for (int j = 0; j < n_; ++j) {
                const double wj = w * sigma_[j];
                macc_[j] += wj;
                double* prow = &pacc_[packed_pos(0, j)];
                for (int i = 0; i <= j; ++i) prow[i] += wj * sigma_[i];
            }
        }
    }

    SiteCoefficients coef_;
    bool moments_;
    int n_{}, na_{};
    std::vector<double> s_, s2_, logw_;
    std::vector<double> field_, sigma_;
    double max_a_ = -std::numeric_limits<double>::infinity();
    NeumaierSum zacc_;
    std::vector<double> macc_, pacc_;
};

class CoupledEnumerator {
public:
    CoupledEnumerator(const DisorderSample& d, const SpinDistribution& dist, const GibbsParams& p,
                      double lambda, double q, CouplingForm form, bool with_moments)
        : coef_(d, p), lambda_(lambda), q_(q), form_(form), moments_(with_moments) {
        n_ = d.n;
        const auto& atoms = dist.atoms();
        const int na = static_cast<int>(atoms.size());
        for (int k1 = 0; k1 < na; ++k1)
            for (int k2 = 0; k2 < na; ++k2) {
                pa_.push_back(atoms[k1].value);
                pb_.push_back(atoms[k2].value);
                pa2_.push_back(atoms[k1].value * atoms[k1].value);
                pb2_.push_back(atoms[k2].value * atoms[k2].value);
                pprod_.push_back(atoms[k1].value * atoms[k2].value);
                plogw_.push_back(std::log(atoms[k1].weight) + std::log(atoms[k2].weight));
            }
        npairs_ = static_cast<int>(pa_.size());
        field_a_.assign(static_cast<std::size_t>(n_ + 1) * n_, 0.0);
        field_b_.assign(static_cast<std::size_t>(n_ + 1) * n_, 0.0);
        sigma_.assign(n_, 0.0);
        if (moments_) {
            macc_.assign(n_, 0.0);
            pacc_.assign(packed_pos(0, n_), 0.0);
        }
    }

    void run() {
        descend(0, 0.0, 0.0, 0.0, 0.0);
        const double z = zacc_.value();
        report.log_z = max_a_ + std::log(z);
        report.overlap = oacc_ / z;
        report.overlap_sq = o2acc_ / z;
        report.sq_dev = devacc_ / z;
        if (moments_) {
            report.magnetization.resize(n_);
            report.pair_moment.resize(pacc_.size());
            for (int i = 0; i < n_; ++i) report.magnetization[i] = macc_[i] / z;
            for (std::size_t k = 0; k < pacc_.size(); ++k) report.pair_moment[k] = pacc_[k] / z;
        }
    }

    CoupledReport report;

private:
    void descend(int level, double epart, double s2a, double s2b, double opart) {
        if (level == n_) {
            const double qbar = opart / n_;
            double a = epart - coef_.t_comp * (s2a * s2a + s2b * s2b);
            if (form_ == CouplingForm::QuadraticOverlap) {
                const double dev = q_ - qbar;
                a += lambda_ * n_ * dev * dev;
            } else {
                a += lambda_ * opart;
            }
            leaf(a, qbar);
            return;
        }
        const double* row_a = &field_a_[static_cast<std::size_t>(level) * n_];
        const double* row_b = &field_b_[static_cast<std::size_t>(level) * n_];
        const double drive_a = coef_.lin[level] + (coef_.has_pair ? row_a[level] : 0.0);
        const double drive_b = coef_.lin[level] + (coef_.has_pair ? row_b[level] : 0.0);
        const bool update_fields = coef_.has_pair && level + 1 < n_;
        double* next_a = &field_a_[static_cast<std::size_t>(level + 1) * n_];
        double* next_b = &field_b_[static_cast<std::size_t>(level + 1) * n_];
        const double* gs_row = coef_.has_pair ? &coef_.gs[static_cast<std::size_t>(level) * n_] : nullptr;
        for (int k = 0; k < npairs_; ++k) {
            const double sa = pa_[k];
            const double sb = pb_[k];
            const double e2 = epart + plogw_[k] + drive_a * sa + drive_b * sb +
                              coef_.sq[level] * (pa2_[k] + pb2_[k]);
            if (update_fields) {
                for (int m = level + 1; m < n_; ++m) {
                    next_a[m] = row_a[m] + gs_row[m] * sa;
                    next_b[m] = row_b[m] + gs_row[m] * sb;
                }
            }
            if (moments_) sigma_[level] = sa;
            descend(level + 1, e2, s2a + pa2_[k], s2b + pb2_[k], opart + pprod_[k]);
        }
    }

    void leaf(double a, double qbar) {
        if (a > max_a_) {
            const double scale = std::exp(max_a_ - a);
            zacc_.sum *= scale;
            zacc_.comp *= scale;
            oacc_ *= scale;
            o2acc_ *= scale;
            devacc_ *= scale;
            if (moments_) {
                for (auto& v : macc_) v *= scale;
                for (auto& v : pacc_) v *= scale;
            }
            max_a_ = a;
        }
        const double w = std::exp(a - max_a_);
        zacc_.add(w);
        oacc_ += w * qbar;
        o2acc_ += w * qbar * qbar;
        const double dev = q_ - qbar;
        devacc_ += w * dev * dev;
        if (moments_) {
            for (int j = 0; j < n_; ++j) {
                const double wj = w * sigma_[j];
                macc_[j] += wj;
                double* prow = &pacc_[packed_pos(0, j)];
                for (int i = 0; i <= j; ++i) prow[i] += wj * sigma_[i];
            }
        }
    }

    SiteCoefficients coef_;
    double lambda_, q_;
    CouplingForm form_;
    bool moments_;
    int n_{}, npairs_{};
    std::vector<double> pa_, pb_, pa2_, pb2_, pprod_, plogw_;
    std::vector<double> field_a_, field_b_, sigma_;
    double max_a_ = -std::numeric_limits<double>::infinity();
    NeumaierSum zacc_;
    double oacc_{}, o2acc_{}, devacc_{};
    std::vector<double> macc_, pacc_;
};

}  // namespace

void check_single_budget(const SpinDistribution& dist, int n) {
    if (n < 1) throw std::invalid_argument("enumeration: n must be >= 1");
    if (enumeration_terms(dist.atom_count(), n) > kEnumerationBudget)
        throw BudgetError("enumeration budget exceeded: atoms^n > 2^24 (use smaller n or fewer atoms)");
}

void check_coupled_budget(const SpinDistribution& dist, int n) {
    if (n < 1) throw std::invalid_argument("enumeration: n must be >= 1");
    if (enumeration_terms(dist.atom_count(), 2 * n) > kEnumerationBudget)
        throw BudgetError("coupled enumeration budget exceeded: atoms^(2n) > 2^24");
}

double hamiltonian_sk(const DisorderSample& d, std::span<const double> sigma) {
    if (static_cast<int>(sigma.size()) != d.n)
        throw std::invalid_argument("hamiltonian_sk: configuration size != n");
    for (double s : sigma)
        if (!(std::abs(s) <= 1.0)) throw std::invalid_argument("hamiltonian_sk: spin outside [-1, 1]");
    const int n = d.n;
    double off = 0.0, diag = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < j; ++i) off += d.g_at(i, j) * sigma[i] * sigma[j];
        diag += d.g_at(j, j) * sigma[j] * sigma[j];
    }
    return std::sqrt(2.0 / n) * off + diag / std::sqrt(static_cast<double>(n));
}

double linear_field(const DisorderSample& d, std::span<const double> sigma) {
    if (static_cast<int>(sigma.size()) != d.n)
        throw std::invalid_argument("linear_field: configuration size != n");
    double acc = 0.0;
    for (int i = 0; i < d.n; ++i) acc += d.j_lin[i] * sigma[i];
    return acc;
}

double log_z_exact(const DisorderSample& d, const SpinDistribution& dist, const GibbsParams& p) {
    validate_params(p);
    check_single_budget(dist, d.n);
    SingleEnumerator e(d, dist, p, /*with_moments=*/false);
    e.run();
    return e.log_z;
}

GibbsReport gibbs_overlap_moments(const DisorderSample& d, const SpinDistribution& dist,
                                  const GibbsParams& p) {
    validate_params(p);
    check_single_budget(dist, d.n);
    SingleEnumerator e(d, dist, p, /*with_moments=*/true);
    e.run();

    GibbsReport r;
    r.log_z = e.log_z;
    r.magnetization = std::move(e.m1);
    r.pair_moment = std::move(e.m2);
    const int n = d.n;
    double qb = 0.0, qb2 = 0.0;
    for (int i = 0; i < n; ++i) qb += r.magnetization[i] * r.magnetization[i];
    for (int j = 0; j < n; ++j)
        for (int i = 0; i <= j; ++i) {
            const double mij = r.pair_moment[packed_pos(i, j)];
            qb2 += (i == j ? 1.0 : 2.0) * mij * mij;
        }
    r.mean_overlap = qb / n;
    r.mean_overlap_sq = qb2 / (static_cast<double>(n) * n);
    return r;
}

double CoupledReport::cross_overlap() const {
    double acc = 0.0;
    for (double m : magnetization) acc += m * m;
    return acc / static_cast<double>(magnetization.size());
}

double CoupledReport::cross_overlap_sq() const {
    const int n = static_cast<int>(magnetization.size());
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i <= j; ++i) {
            const double mij = pair_moment[packed_pos(i, j)];
            acc += (i == j ? 1.0 : 2.0) * mij * mij;
        }
    return acc / (static_cast<double>(n) * n);
}

CoupledReport coupled_pair_report(const DisorderSample& d, const SpinDistribution& dist,
                                  const GibbsParams& p, double lambda, double q, CouplingForm form,
                                  bool with_moments) {
    validate_params(p);
    if (!std::isfinite(lambda) || !std::isfinite(q))
        throw std::invalid_argument("coupled_pair_report: lambda and q must be finite");
    check_coupled_budget(dist, d.n);
    CoupledEnumerator e(d, dist, p, lambda, q, form, with_moments);
    e.run();
    return e.report;
}

}
