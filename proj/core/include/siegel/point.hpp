#ifndef SIEGEL_POINT_HPP
#define SIEGEL_POINT_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace siegel {

using cplx = std::complex<double>;

/// A point of C^n in split coordinates z = (z', z_n), z' in C^(n-1).
/// Components are validated to be finite; whether the point lies in the
/// Siegel domain is a property (is_interior), not a construction invariant,
/// because boundary points must stay representable.
class CPoint {
public:
    CPoint() : zn_(0.0, 1.0) {}  // default: the base point of dimension 1

    CPoint(std::vector<cplx> zprime, cplx zn)
        : zprime_(std::move(zprime)), zn_(zn) {
        validate();
    }

    /// The distinguished interior point (0', i).
    static CPoint base_point(std::size_t dim) {
        if (dim < 1) throw std::invalid_argument("CPoint: dim must be >= 1");
        return CPoint(std::vector<cplx>(dim - 1, cplx(0.0, 0.0)), cplx(0.0, 1.0));
    }

    std::size_t dim() const { return zprime_.size() + 1; }
    const std::vector<cplx>& zprime() const { return zprime_; }
    cplx zn() const { return zn_; }

    /// Mutable access for hot loops that refill a reusable point in place.
    std::vector<cplx>& zprime_mut() { return zprime_; }
    void set_zn(cplx v) { zn_ = v; }

    double abs2() const {
        double s = std::norm(zn_);
        for (const cplx& c : zprime_) s += std::norm(c);
        return s;
    }

    bool operator==(const CPoint& o) const {
        return zprime_ == o.zprime_ && zn_ == o.zn_;
    }

private:
    void validate() const {
        auto finite = [](cplx c) {
            return std::isfinite(c.real()) && std::isfinite(c.imag());
        };
        if (!finite(zn_)) throw std::invalid_argument("CPoint: non-finite z_n");
        for (const cplx& c : zprime_)
            if (!finite(c)) throw std::invalid_argument("CPoint: non-finite z' component");
    }

    std::vector<cplx> zprime_;
    cplx zn_;
};

/// A point of C^n used for the unit-ball model. Interior constructors check
/// |coords| < 1; boundary points only through the unchecked factory.
class BallPoint {
public:
    BallPoint() : coords_(1, cplx(0.0, 0.0)) {}

    explicit BallPoint(std::vector<cplx> coords) : coords_(std::move(coords)) {
        if (coords_.empty()) throw std::invalid_argument("BallPoint: dim must be >= 1");
        if (abs2() >= 1.0) throw std::invalid_argument("BallPoint: |coords| must be < 1");
        validate();
    }

    static BallPoint unchecked(std::vector<cplx> coords) {
        BallPoint p;
        p.coords_ = std::move(coords);
        if (p.coords_.empty()) throw std::invalid_argument("BallPoint: dim must be >= 1");
        p.validate();
        return p;
    }

    static BallPoint origin(std::size_t dim) {
        if (dim < 1) throw std::invalid_argument("BallPoint: dim must be >= 1");
        return unchecked(std::vector<cplx>(dim, cplx(0.0, 0.0)));
    }

    std::size_t dim() const { return coords_.size(); }
    const std::vector<cplx>& coords() const { return coords_; }
    std::vector<cplx>& coords_mut() { return coords_; }

    cplx last() const { return coords_.back(); }

    double abs2() const {
        double s = 0.0;
        for (const cplx& c : coords_) s += std::norm(c);
        return s;
    }

private:
    void validate() const {
        for (const cplx& c : coords_)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw std::invalid_argument("BallPoint: non-finite component");
    }

    std::vector<cplx> coords_;
};

/// z . conj(w) over C^(n-1) prime parts.
inline cplx dot_conj(const std::vector<cplx>& z, const std::vector<cplx>& w) {
    if (z.size() != w.size())
        throw std::invalid_argument("dot_conj: dimension mismatch");
    cplx s(0.0, 0.0);
    for (std::size_t k = 0; k < z.size(); ++k) s += z[k] * std::conj(w[k]);
    return s;
}

}  // namespace siegel

#endif
