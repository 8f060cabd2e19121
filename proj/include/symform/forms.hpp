#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "symform/hermitian.hpp"

namespace symform {

// Built-in symmetric forms on R_+^n. All are homogeneous, monotone and
// permutation invariant; all are concave; minsum(k < n) is the one that is
// not Hoelder.
enum class FormKind { trace, ktrace, gk, seminorm, minsum };

struct FormDescriptor {
    FormKind kind = FormKind::trace;
    int k = 1;        // ktrace, gk, minsum
    double p = 1.0;   // seminorm, p in (0,1]

    static FormDescriptor trace() { return {FormKind::trace, 1, 1.0}; }
    static FormDescriptor ktrace(int k) {
        require_k(k);
        return {FormKind::ktrace, k, 1.0};
    }
    static FormDescriptor gk(int k) {
        require_k(k);
        return {FormKind::gk, k, 1.0};
    }
    static FormDescriptor seminorm(double p) {
        if (!(p > 0.0 && p <= 1.0)) throw InvalidInputError("seminorm: p must be in (0,1]");
        return {FormKind::seminorm, 1, p};
    }
    static FormDescriptor minsum(int k) {
        require_k(k);
        return {FormKind::minsum, k, 1.0};
    }

    std::string to_string() const {
        switch (kind) {
            case FormKind::trace: return "trace";
            case FormKind::ktrace: return "ktrace:k=" + std::to_string(k);
            case FormKind::gk: return "gk:k=" + std::to_string(k);
            case FormKind::seminorm: {
                std::string s = std::to_string(p);
                while (s.size() > 1 && s.back() == '0') s.pop_back();
                if (!s.empty() && s.back() == '.') s.pop_back();
                return "seminorm:p=" + s;
            }
            case FormKind::minsum: return "minsum:k=" + std::to_string(k);
        }
        return "?";
    }

private:
    static void require_k(int k) {
        if (k < 1) throw InvalidInputError("form parameter k must be >= 1");
    }
};

// Grammar: "trace" | "ktrace:k=K" | "gk:k=K" | "seminorm:p=P" | "minsum:k=K"
inline FormDescriptor parse_form(const std::string& text) {
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    const auto int_param = [&](const char* name) {
        const std::string prefix = std::string(name) + "=";
        if (rest.rfind(prefix, 0) != 0)
            throw InvalidInputError("form '" + text + "': expected " + prefix + "<int>");
        try {
            std::size_t used = 0;
            const int v = std::stoi(rest.substr(prefix.size()), &used);
            if (used != rest.size() - prefix.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw InvalidInputError("form '" + text + "': bad integer parameter");
        }
    };
    if (head == "trace") {
        if (!rest.empty()) throw InvalidInputError("form 'trace' takes no parameter");
        return FormDescriptor::trace();
    }
    if (head == "ktrace") return FormDescriptor::ktrace(int_param("k"));
    if (head == "gk") return FormDescriptor::gk(int_param("k"));
    if (head == "minsum") return FormDescriptor::minsum(int_param("k"));
    if (head == "seminorm") {
        if (rest.rfind("p=", 0) != 0)
            throw InvalidInputError("form '" + text + "': expected p=<real>");
        try {
            std::size_t used = 0;
            const double v = std::stod(rest.substr(2), &used);
            if (used != rest.size() - 2) throw std::invalid_argument("trailing");
            return FormDescriptor::seminorm(v);
        } catch (const InvalidInputError&) {
            throw;
        } catch (const std::exception&) {
            throw InvalidInputError("form '" + text + "': bad real parameter");
        }
    }
    throw InvalidInputError("unknown form '" + text + "'");
}

inline constexpr std::uint64_t kSubsetEnumerationCap = 2'000'000;

// binomial(n,k), throwing once the value passes `cap` so subset loops can
// refuse oversized enumerations up front
inline std::uint64_t binomial_capped(int n, int k, std::uint64_t cap) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long double acc = 1.0L;
    for (int i = 1; i <= k; ++i) {
        acc = acc * static_cast<long double>(n - k + i) / static_cast<long double>(i);
        if (acc > static_cast<long double>(cap) * 1.0000001L)
            throw ResourceLimitError("binomial(" + std::to_string(n) + "," + std::to_string(k) +
                                     ") exceeds enumeration cap");
    }
    return static_cast<std::uint64_t>(acc + 0.5L);
}

inline std::uint64_t binomial(int n, int k) {
    return binomial_capped(n, k, kSubsetEnumerationCap);
}

inline void require_spectrum(const RealVector& x, const char* who) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        // overflowed spectra (huge outer exponents) are a numerical failure,
        // so callers can skip the trial; negative entries break the contract
        if (!std::isfinite(x[i]))
            throw NumericalFailureError(std::string(who) + ": non-finite spectrum entry");
        if (x[i] < 0.0)
            throw InvalidInputError(std::string(who) + ": entries must be >= 0");
    }
}

// k-th elementary symmetric polynomial by the prefix recurrence
// e_k^{(m)} = e_k^{(m-1)} + x_m e_{k-1}^{(m-1)}; additions of nonnegative
// terms only, so there is no cancellation.
inline double esp(const RealVector& x, int k) {
    const int n = static_cast<int>(x.size());
    if (k < 1 || k > n) throw InvalidInputError("esp: k out of range");
    require_spectrum(x, "esp");
    std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
    e[0] = 1.0;
    for (int m = 0; m < n; ++m)
        for (int j = std::min(k, m + 1); j >= 1; --j)
            e[static_cast<std::size_t>(j)] += x[m] * e[static_cast<std::size_t>(j) - 1];
    return e[static_cast<std::size_t>(k)];
}

// visit all k-subsets of {0..n-1} in lexicographic order
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j) - 1] + 1;
    }
}

inline double eval_form(const FormDescriptor& form, const RealVector& x) {
    const int n = static_cast<int>(x.size());
    if (n < 1) throw InvalidInputError("eval_form: empty vector");
    require_spectrum(x, "eval_form");
    switch (form.kind) {
        case FormKind::trace:
            return x.sum();
        case FormKind::ktrace: {
            if (form.k > n) throw InvalidInputError("ktrace: k exceeds dimension");
            return std::pow(esp(x, form.k), 1.0 / form.k);
        }
        case FormKind::gk: {
            if (form.k > n) throw InvalidInputError("gk: k exceeds dimension");
            binomial_capped(n, form.k, kSubsetEnumerationCap);
            double sum = 0.0;
            const double inv_k = 1.0 / form.k;
            for_each_subset(n, form.k, [&](const std::vector<int>& s) {
                double prod = 1.0;
                for (int i : s) prod *= x[i];
                sum += std::pow(prod, inv_k);
            });
            return sum;
        }
        case FormKind::seminorm: {
            double sum = 0.0;
            for (Eigen::Index i = 0; i < x.size(); ++i) sum += std::pow(x[i], form.p);
            return std::pow(sum, 1.0 / form.p);
        }
        case FormKind::minsum: {
            if (form.k > n) throw InvalidInputError("minsum: k exceeds dimension");
            RealVector sorted = x;
            std::sort(sorted.data(), sorted.data() + sorted.size());
            double sum = 0.0;
            for (int i = 0; i < form.k; ++i) sum += sorted[i];
            return sum;
        }
    }
    throw InvalidInputError("eval_form: unreachable kind");
}

// matrix extension: evaluate the form on the (clamped) spectrum
inline double eval_form_matrix(const FormDescriptor& form, const PSDMatrix& a) {
    return eval_form(form, a.spectrum().cwiseMax(0.0));
}

// Closed-form classification of the built-ins: every kind is concave;
// minsum with k < n fails Hoelder's inequality (minsum with k = n is the
// full sum, i.e. trace).
inline bool form_is_hoelder(const FormDescriptor& form, int n) {
    return !(form.kind == FormKind::minsum && form.k < n);
}

inline bool form_is_concave(const FormDescriptor&) {
    return true;
}

}  // namespace symform
