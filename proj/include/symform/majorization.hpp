#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "symform/hermitian.hpp"
#include "symform/matrix_functions.hpp"

namespace symform {

inline constexpr double kMajorizationTol = 1e-10;

struct MajorizationVerdict {
    bool weak = false;
    bool strict = false;
    RealVector prefix_slacks;  // sum_{j<=k} b_[j] - sum_{j<=k} a_[j]
    double sum_gap = 0.0;      // slack at k = n
    double scale = 1.0;        // max(1, |a|_1, |b|_1)

    double min_slack() const { return prefix_slacks.minCoeff(); }
};

using PermutationVector = std::vector<int>;

inline RealVector sorted_descending(const RealVector& v) {
    RealVector s = v;
    std::sort(s.data(), s.data() + s.size(), std::greater<double>());
    return s;
}

// Weak/strict majorization via prefix slacks of the descending sorts.
// Comparisons carry a slack of kMajorizationTol * scale; spectra arrive with
// eigensolver noise.
inline MajorizationVerdict verdict(const RealVector& a, const RealVector& b,
                                   bool log_domain = false) {
    if (a.size() != b.size()) throw InvalidInputError("verdict: length mismatch");
    if (a.size() == 0) throw InvalidInputError("verdict: empty vectors");
    RealVector av = a, bv = b;
    if (log_domain) {
        for (Eigen::Index i = 0; i < a.size(); ++i) {
            if (!(a[i] >= 1e-300) || !(b[i] >= 1e-300))
                throw InvalidInputError("verdict: log domain requires entries >= 1e-300");
        }
        av = a.array().log().matrix();
        bv = b.array().log().matrix();
    }
    const RealVector as = sorted_descending(av);
    const RealVector bs = sorted_descending(bv);

    MajorizationVerdict v;
    v.scale = std::max({1.0, av.cwiseAbs().sum(), bv.cwiseAbs().sum()});
    v.prefix_slacks.resize(a.size());
    double pa = 0.0, pb = 0.0;
    for (Eigen::Index k = 0; k < a.size(); ++k) {
        pa += as[k];
        pb += bs[k];
        v.prefix_slacks[k] = pb - pa;
    }
    v.sum_gap = v.prefix_slacks[a.size() - 1];
    const double tol = kMajorizationTol * v.scale;
    v.weak = v.min_slack() >= -tol;
    v.strict = v.weak && std::abs(v.sum_gap) <= tol;
    return v;
}

// Bridge vector: given a weakly majorized by b, produce c with a <= c
// (entrywise) and c majorized by b. The deficit sum(b) - sum(a) is poured
// onto the smallest entries of a, one water level at a time, capped whenever
// a prefix constraint sum_{j<=k} c_[j] <= sum_{j<=k} b_[j] becomes tight.
inline RealVector bridge(const RealVector& a, const RealVector& b) {
    const MajorizationVerdict pre = verdict(a, b);
    if (!pre.weak) throw PreconditionFailedError("bridge: a is not weakly majorized by b");

    const Eigen::Index n = a.size();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return a[i] > a[j]; });

    RealVector c(n);  // working copy, sorted descending
    for (Eigen::Index i = 0; i < n; ++i) c[i] = a[order[static_cast<std::size_t>(i)]];
    const RealVector bs = sorted_descending(b);
    RealVector bpref(n);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) bpref[i] = (acc += bs[i]);

    const double tiny = kMajorizationTol * pre.scale;
    const double merge_eps = 1e-13 * pre.scale;  // near-equal levels count as one run
    Eigen::Index frozen = 0;                     // entries before this index may not rise

    for (Eigen::Index iter = 0; iter < 4 * n + 8; ++iter) {
        const double deficit = bpref[n - 1] - c.sum();
        if (deficit <= tiny) break;

        // trailing minimal run within the active suffix
        const double level = c[n - 1];
        Eigen::Index g = n - 1;
        while (g > frozen && c[g - 1] <= level + merge_eps) --g;
        const double m = static_cast<double>(n - g);

        double step = deficit / m;
        if (g > frozen)
            step = std::min(step, c[g - 1] - level);  // merge with the next level up
        else if (frozen > 0)
            step = std::min(step, c[frozen - 1] - level);  // ceiling at the frozen boundary
        // prefix caps: raising positions g..n-1 adds (k-g+1)*step to prefix k
        double cpref = 0.0;
        for (Eigen::Index k = 0; k < n - 1; ++k) {
            cpref += c[k];
            if (k >= g) {
                const double cap = (bpref[k] - cpref) / static_cast<double>(k - g + 1);
                step = std::min(step, cap);
            }
        }
        if (step <= 0.0) {
            if (g > frozen || frozen > 0) {
                // a prefix went tight; freeze through it and retry
                double p = 0.0;
                Eigen::Index new_frozen = frozen;
                for (Eigen::Index k = 0; k < n - 1; ++k) {
                    p += c[k];
                    if (k >= g && bpref[k] - p <= tiny) new_frozen = k + 1;
                }
                if (new_frozen == frozen)
                    throw NumericalFailureError("bridge: construction stalled");
                frozen = new_frozen;
                continue;
            }
            throw NumericalFailureError("bridge: construction stalled");
        }
        for (Eigen::Index i = g; i < n; ++i) c[i] += step;
        // freeze any prefix that is now tight
        double p = 0.0;
        for (Eigen::Index k = 0; k < n - 1; ++k) {
            p += c[k];
            if (k >= g && bpref[k] - p <= tiny) frozen = std::max(frozen, k + 1);
        }
    }

    RealVector out(n);
    for (Eigen::Index i = 0; i < n; ++i) out[order[static_cast<std::size_t>(i)]] = c[i];

    // post-verify with the verdict oracle alone
    for (Eigen::Index i = 0; i < n; ++i)
        if (out[i] < a[i] - tiny) throw NumericalFailureError("bridge: output dropped below a");
    if (!verdict(out, b).strict) throw NumericalFailureError("bridge: output not majorized by b");
    return out;
}

inline bool is_doubly_stochastic(const RealMatrix& d, double tol = kMajorizationTol) {
    if (d.rows() != d.cols() || d.rows() == 0) return false;
    if (d.minCoeff() < -1e-12) return false;
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
        if (std::abs(d.row(i).sum() - 1.0) > tol) return false;
        if (std::abs(d.col(i).sum() - 1.0) > tol) return false;
    }
    return true;
}

// Doubly stochastic witness for a majorized by b (Hardy-Littlewood-Polya):
// a product of at most n-1 T-transforms, each lam*I + (1-lam)*transposition.
inline RealMatrix ds_from_majorization(const RealVector& a, const RealVector& b) {
    const MajorizationVerdict pre = verdict(a, b);
    if (!pre.strict) throw PreconditionFailedError("ds_from_majorization: a not majorized by b");

    const Eigen::Index n = a.size();
    std::vector<Eigen::Index> pa(static_cast<std::size_t>(n)), pb(static_cast<std::size_t>(n));
    std::iota(pa.begin(), pa.end(), Eigen::Index{0});
    std::iota(pb.begin(), pb.end(), Eigen::Index{0});
    std::stable_sort(pa.begin(), pa.end(), [&](Eigen::Index i, Eigen::Index j) { return a[i] > a[j]; });
    std::stable_sort(pb.begin(), pb.end(), [&](Eigen::Index i, Eigen::Index j) { return b[i] > b[j]; });

    RealVector as(n), x(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        as[i] = a[pa[static_cast<std::size_t>(i)]];
        x[i] = b[pb[static_cast<std::size_t>(i)]];
    }

    RealMatrix ds = RealMatrix::Identity(n, n);  // sorted coordinates
    const double tol = kMajorizationTol * pre.scale;

    for (Eigen::Index step = 0; step < n - 1; ++step) {
        if ((x - as).cwiseAbs().maxCoeff() <= tol) break;
        // largest j with x_j > a_j, then smallest k > j with x_k < a_k
        Eigen::Index j = -1, k = -1;
        for (Eigen::Index i = 0; i < n; ++i)
            if (x[i] > as[i] + tol) j = i;
        for (Eigen::Index i = (j < 0 ? 0 : j) + 1; i < n; ++i)
            if (x[i] < as[i] - tol) {
                k = i;
                break;
            }
        if (j < 0 || k < 0) break;  // only sub-tolerance discrepancies remain
        const double delta = std::min(x[j] - as[j], as[k] - x[k]);
        const double lam = 1.0 - delta / (x[j] - x[k]);
        RealMatrix t = RealMatrix::Identity(n, n);
        t(j, j) = lam;
        t(k, k) = lam;
        t(j, k) = 1.0 - lam;
        t(k, j) = 1.0 - lam;
        x = t * x;
        ds = t * ds;
    }

    // undo the sorting permutations: a = Pa^T ds Pb b
    RealMatrix out(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            out(pa[static_cast<std::size_t>(i)], pb[static_cast<std::size_t>(j)]) = ds(i, j);

    if ((out * b - a).cwiseAbs().maxCoeff() > 1e-9 * pre.scale)
        throw NumericalFailureError("ds_from_majorization: residual exceeds tolerance");
    return out;
}

namespace detail {

// Kuhn's augmenting-path bipartite matching over the support mask,
// lexicographic vertex order for reproducibility.
inline bool find_matching(const std::vector<std::vector<char>>& support, std::vector<int>& row_of_col,
                          std::vector<int>& col_of_row) {
    const int n = static_cast<int>(support.size());
    row_of_col.assign(static_cast<std::size_t>(n), -1);
    col_of_row.assign(static_cast<std::size_t>(n), -1);
    std::vector<char> visited;
    const std::function<bool(int)> augment = [&](int r) -> bool {
        for (int c = 0; c < n; ++c) {
            if (!support[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] ||
                visited[static_cast<std::size_t>(c)])
                continue;
            visited[static_cast<std::size_t>(c)] = 1;
            if (row_of_col[static_cast<std::size_t>(c)] < 0 ||
                augment(row_of_col[static_cast<std::size_t>(c)])) {
                row_of_col[static_cast<std::size_t>(c)] = r;
                col_of_row[static_cast<std::size_t>(r)] = c;
                return true;
            }
        }
        return false;
    };
    for (int r = 0; r < n; ++r) {
        visited.assign(static_cast<std::size_t>(n), 0);
        if (!augment(r)) return false;
    }
    return true;
}

}  // namespace detail

struct BirkhoffTerm {
    double weight;
    PermutationVector permutation;  // image: row i pairs with column permutation[i]
};

// Greedy Birkhoff decomposition: extract a perfect matching on the positive
// support, subtract its minimum weight, repeat.
inline std::vector<BirkhoffTerm> birkhoff(const RealMatrix& d_in) {
    const Eigen::Index n = d_in.rows();
    if (n == 0 || d_in.cols() != n) throw InvalidInputError("birkhoff: matrix must be square");
    if (n > 12) throw InvalidInputError("birkhoff: n must be <= 12");
    if (!is_doubly_stochastic(d_in)) throw InvalidInputError("birkhoff: matrix is not doubly stochastic");

    RealMatrix r = d_in;
    std::vector<BirkhoffTerm> terms;
    const double support_tol = 1e-12;

    for (Eigen::Index round = 0; round < n * n + 1; ++round) {
        double mass = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) mass = std::max(mass, r.row(i).sum());
        if (mass <= 1e-10) break;

        std::vector<std::vector<char>> support(static_cast<std::size_t>(n),
                                               std::vector<char>(static_cast<std::size_t>(n), 0));
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                support[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    r(i, j) > support_tol;

        std::vector<int> row_of_col, col_of_row;
        if (!detail::find_matching(support, row_of_col, col_of_row))
            throw NumericalFailureError("birkhoff: no perfect matching on positive support");

        double tau = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < n; ++i)
            tau = std::min(tau, r(i, col_of_row[static_cast<std::size_t>(i)]));
        for (Eigen::Index i = 0; i < n; ++i) {
            auto& cell = r(i, col_of_row[static_cast<std::size_t>(i)]);
            cell -= tau;
            if (cell < support_tol) cell = 0.0;
        }
        if (tau > 1e-12)
            terms.push_back({tau, PermutationVector(col_of_row.begin(), col_of_row.end())});
    }
    if (terms.empty()) throw NumericalFailureError("birkhoff: nothing extracted");
    return terms;
}

inline RealMatrix permutation_matrix(const PermutationVector& p) {
    const Eigen::Index n = static_cast<Eigen::Index>(p.size());
    RealMatrix m = RealMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, p[static_cast<std::size_t>(i)]) = 1.0;
    return m;
}

enum class EigenMajorizationRelation { sum, product };

// lambda(A+B) majorized by lambda(A)+lambda(B) for Hermitian pairs;
// log lambda(|AB|) majorized by log(lambda(A) lambda(B)) for positive pairs.
inline MajorizationVerdict eigen_majorization_check(const HermitianMatrix& a,
                                                    const HermitianMatrix& b,
                                                    EigenMajorizationRelation relation) {
    if (a.dim() != b.dim()) throw InvalidInputError("eigen_majorization_check: dimension mismatch");
    if (relation == EigenMajorizationRelation::sum) {
        const RealVector la = eigh(a).lambda;
        const RealVector lb = eigh(b).lambda;
        const RealVector lsum = eigh(HermitianMatrix::from_symmetrized(a.matrix() + b.matrix())).lambda;
        return verdict(lsum, la + lb, false);
    }
    const PSDMatrix pa(a);
    const PSDMatrix pb(b);
    if (pa.lambda_min() <= 1e-8 * pa.lambda_max() || pb.lambda_min() <= 1e-8 * pb.lambda_max())
        throw InvalidInputError("eigen_majorization_check: product relation needs well-conditioned PD inputs");
    const RealVector sv = singular_values(pa.matrix() * pb.matrix());
    const RealVector prod = pa.spectrum().cwiseProduct(pb.spectrum());
    return verdict(sv, prod, true);
}

}  // namespace symform
