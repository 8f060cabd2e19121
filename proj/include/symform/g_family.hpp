#pragma once

#include <utility>
#include <vector>

#include "symform/hermitian.hpp"
#include "symform/matrix_functions.hpp"

namespace symform {

namespace detail {

// strictly positive-definite factor with a cached eigenbasis, so A^z is one
// diagonal scaling plus two products per evaluation
struct PowerFactor {
    ComplexMatrix u;
    RealVector loglam;

    static PowerFactor from(const PSDMatrix& a, const char* who) {
        if (!(a.lambda_min() > 0.0))
            throw InvalidInputError(std::string(who) + ": factor must be strictly positive definite");
        PowerFactor f;
        f.u = a.decomposition().eigenvectors;
        f.loglam = a.spectrum().array().log().matrix();
        return f;
    }

    ComplexMatrix pow(Complex z) const {
        Eigen::VectorXcd d(loglam.size());
        for (Eigen::Index i = 0; i < loglam.size(); ++i) d[i] = std::exp(z * loglam[i]);
        return u * d.asDiagonal() * u.adjoint();
    }
};

}  // namespace detail

enum class GFamilyKind { power_product, epstein, lieb_two_var };

// Holomorphic families G(z) on the strip 0 <= Re z <= 1, as they appear in
// the concavity proofs. All stored positive factors are strictly PD, which
// keeps ||G(z)|| uniformly bounded on the strip.
class GFamily {
public:
    GFamilyKind kind() const { return kind_; }

    // G(z) = A_1^z A_2^z ... A_m^z
    static GFamily power_product(const std::vector<PSDMatrix>& factors) {
        if (factors.empty()) throw InvalidInputError("GFamily: need at least one factor");
        GFamily g;
        g.kind_ = GFamilyKind::power_product;
        for (const auto& a : factors) {
            if (a.dim() != factors.front().dim())
                throw InvalidInputError("GFamily: factor dimensions differ");
            g.factors_.push_back(detail::PowerFactor::from(a, "GFamily::power_product"));
        }
        return g;
    }

    // G(z) = X^{rz/2} C^{-rz/2} Q |M|^{z/s} with M = C^{rs/2} K, M = Q|M|
    static GFamily epstein(const PSDMatrix& x, const PSDMatrix& c, const ComplexMatrix& k,
                           double r, double s) {
        require_unit_interval(r, "r");
        require_unit_interval(s, "s");
        if (x.dim() != c.dim() || k.rows() != x.dim() || k.cols() != x.dim())
            throw InvalidInputError("GFamily::epstein: dimension mismatch");
        GFamily g;
        g.kind_ = GFamilyKind::epstein;
        g.r_ = r;
        g.s_ = s;
        const ComplexMatrix m = matrix_pow(c, r * s / 2.0) * k;
        PolarDecomposition pd = polar(m);
        g.q_ = std::move(pd.unitary);
        g.factors_.push_back(detail::PowerFactor::from(x, "GFamily::epstein"));
        g.factors_.push_back(detail::PowerFactor::from(c, "GFamily::epstein"));
        g.factors_.push_back(detail::PowerFactor::from(pd.positive, "GFamily::epstein"));
        return g;
    }

    // G(z) = X1^{rsz/2} C1^{-rsz/2} M C2^{-rs(1-z)/2} X2^{rs(1-z)/2},
    // M = C1^{ps/2} K C2^{qs/2}, r = p + q
    static GFamily lieb_two_var(const PSDMatrix& x1, const PSDMatrix& x2, const PSDMatrix& c1,
                                const PSDMatrix& c2, const ComplexMatrix& k, double p, double q,
                                double s) {
        require_unit_interval(p, "p");
        require_unit_interval(q, "q");
        require_unit_interval(s, "s");
        if (p + q > 1.0 + 1e-12) throw InvalidInputError("GFamily::lieb_two_var: p + q must be <= 1");
        if (x1.dim() != c1.dim() || x2.dim() != c2.dim() || k.rows() != x1.dim() ||
            k.cols() != x2.dim())
            throw InvalidInputError("GFamily::lieb_two_var: dimension mismatch");
        GFamily g;
        g.kind_ = GFamilyKind::lieb_two_var;
        g.r_ = p + q;
        g.s_ = s;
        g.q_ = matrix_pow(c1, p * s / 2.0) * k * matrix_pow(c2, q * s / 2.0);  // stores M
        g.factors_.push_back(detail::PowerFactor::from(x1, "GFamily::lieb_two_var"));
        g.factors_.push_back(detail::PowerFactor::from(c1, "GFamily::lieb_two_var"));
        g.factors_.push_back(detail::PowerFactor::from(x2, "GFamily::lieb_two_var"));
        g.factors_.push_back(detail::PowerFactor::from(c2, "GFamily::lieb_two_var"));
        return g;
    }

    double r() const { return r_; }
    double s() const { return s_; }

    ComplexMatrix eval(Complex z) const {
        if (z.real() < -1e-12 || z.real() > 1.0 + 1e-12)
            throw InvalidInputError("GFamily::eval: z off the strip 0 <= Re z <= 1");
        switch (kind_) {
            case GFamilyKind::power_product: {
                ComplexMatrix g = factors_.front().pow(z);
                for (std::size_t i = 1; i < factors_.size(); ++i) g *= factors_[i].pow(z);
                return g;
            }
            case GFamilyKind::epstein: {
                const auto& x = factors_[0];
                const auto& c = factors_[1];
                const auto& absm = factors_[2];
                return x.pow(0.5 * r_ * z) * c.pow(-0.5 * r_ * z) * q_ * absm.pow(z / s_);
            }
            case GFamilyKind::lieb_two_var: {
                const auto& x1 = factors_[0];
                const auto& c1 = factors_[1];
                const auto& x2 = factors_[2];
                const auto& c2 = factors_[3];
                const Complex w = Complex(1.0, 0.0) - z;
                return x1.pow(0.5 * r_ * s_ * z) * c1.pow(-0.5 * r_ * s_ * z) * q_ *
                       c2.pow(-0.5 * r_ * s_ * w) * x2.pow(0.5 * r_ * s_ * w);
            }
        }
        throw InvalidInputError("GFamily::eval: unreachable kind");
    }

private:
    static void require_unit_interval(double v, const char* name) {
        if (!(v > 0.0 && v <= 1.0))
            throw InvalidInputError(std::string("GFamily: parameter ") + name + " must be in (0,1]");
    }

    GFamilyKind kind_ = GFamilyKind::power_product;
    double r_ = 1.0;
    double s_ = 1.0;
    ComplexMatrix q_;  // epstein: the polar unitary; lieb_two_var: the fixed middle matrix M
    std::vector<detail::PowerFactor> factors_;
};

inline ComplexMatrix eval_G(const GFamily& family, Complex z) { return family.eval(z); }

}  // namespace symform
