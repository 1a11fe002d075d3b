#include "conformal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "errors.hpp"
#include "specialfn.hpp"

namespace vp {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

void require_interior(const ConformalMap& m, cplx z, const char* what)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || !m.contains(z)) {
        std::ostringstream os;
        os << what << ": point (" << z.real() << ", " << z.imag() << ") is not interior";
        fail(errc::domain, os.str());
    }
}

void require_unit(cplx w, const char* what)
{
    if (!(std::abs(w) < 1.0 - 1e-10)) {
        std::ostringstream os;
        os << what << ": |w| = " << std::abs(w) << " is not inside the unit disc";
        fail(errc::proximity, os.str());
    }
}

void guard_boundary(const ConformalMap& m, cplx, const Jet3& j)
{
    double d = (1.0 - std::abs(j.c[0])) / std::abs(j.c[1]);
    if (!(d > 1e-10 * m.diameter()))
        fail(errc::proximity, "point is within the boundary guard distance");
}

// inverse series of a jet: if F(w+h) has Taylor coefficients a, return Phi around F(w)
Jet3 invert_jet(cplx w, cplx a1, cplx a2, cplx a3)
{
    Jet3 r;
    r.c[0] = w;
    r.c[1] = 1.0 / a1;
    r.c[2] = -a2 / (a1 * a1 * a1);
    r.c[3] = (2.0 * a2 * a2 - a1 * a3) / std::pow(a1, 5);
    return r;
}

// --------------------------------------------------------------------------

class DiscMap : public ConformalMap {
public:
    DomainKind kind() const override { return DomainKind::disc; }
    std::string describe() const override { return "kind=disc"; }
    cplx phi(cplx z) const override
    {
        require_interior(*this, z, "phi");
        return z;
    }
    Jet3 phi_jet(cplx z) const override
    {
        require_interior(*this, z, "phi_derivs");
        return Jet3::variable(z);
    }
    cplx f_inverse(cplx w) const override
    {
        require_unit(w, "f_inverse");
        return w;
    }
    cplx schwarzian_of_F(cplx) const override { return 0.0; }
    bool contains(cplx z) const override { return std::norm(z) < 1.0; }
    cplx xi0() const override { return 0.0; }
    double diameter() const override { return 2.0; }
    double boundary_length() const override { return 2.0 * pi; }
};

// --------------------------------------------------------------------------

class EllipseMap : public ConformalMap {
public:
    explicit EllipseMap(double a) : a_(a)
    {
        if (!(a > 1.0))
            fail(errc::domain, "ellipse: semi-axis a must exceed 1");
        c_ = std::sqrt((a - 1.0) * (a + 1.0));
        ellipse_modulus(a, k_, kp_);
        K_ = elliptic_K(k_, kp_);
        kappa_ = 2.0 * K_ / pi;
        sqk_ = std::sqrt(k_);
        a1_ = sqk_ * kappa_ / c_;
        double n = 2048;
        double s = 0;
        for (int i = 0; i < n; ++i) {
            double t = 2 * pi * i / n;
            s += std::hypot(a_ * std::sin(t), std::cos(t));
        }
        L_ = s * 2 * pi / n;
    }

    DomainKind kind() const override { return DomainKind::ellipse; }
    std::string describe() const override
    {
        std::ostringstream os;
        os.precision(17);
        os << "kind=ellipse a=" << a_;
        return os.str();
    }

    cplx phi(cplx z) const override
    {
        require_interior(*this, z, "phi");
        return phi_sym(z);
    }

    Jet3 phi_jet(cplx z) const override
    {
        require_interior(*this, z, "phi_derivs");
        bool flip = z.real() < 0;
        cplx z1 = flip ? -z : z;
        bool conj_ = z1.imag() < 0;
        cplx z2 = conj_ ? std::conj(z1) : z1;
        Jet3 j = jet_q1(z2);
        if (conj_)
            for (auto& c : j.c)
                c = std::conj(c);
        if (flip) {
            j.c[0] = -j.c[0];
            j.c[2] = -j.c[2];
        }
        guard_boundary(*this, z, j);
        return j;
    }

    cplx f_inverse(cplx w) const override
    {
        require_unit(w, "f_inverse");
        if (std::abs(w) == 0.0)
            return 0.0;
        cplx z;
        if (newton(w, w / a1_, z))
            return z;
        // continuation along the ray t*w
        z = 0.0;
        const int steps = 64;
        for (int s = 1; s <= steps; ++s) {
            cplx target = w * (double(s) / steps);
            cplx zn;
            if (!newton(target, z, zn))
                fail(errc::convergence, "ellipse f_inverse: continuation failed");
            z = zn;
        }
        return z;
    }

    bool contains(cplx z) const override
    {
        double x = z.real() / a_, y = z.imag();
        return x * x + y * y < 1.0;
    }
    cplx xi0() const override { return 0.0; }
    double diameter() const override { return 2.0 * a_; }
    double boundary_length() const override { return L_; }
    std::vector<cplx> boundary_points(int n) const override
    {
        std::vector<cplx> p(n);
        for (int i = 0; i < n; ++i) {
            double t = 2 * pi * i / n;
            p[i] = cplx(a_ * std::cos(t), std::sin(t));
        }
        return p;
    }

private:
    double a_, c_, k_, kp_, K_, kappa_, sqk_, a1_, L_;

    cplx phi_q1(cplx z) const
    {
        cplx zeta = std::asin(z / c_);
        SnCnDn s = jacobi_sn_cn_dn(kappa_ * zeta, k_, kp_);
        return sqk_ * s.sn;
    }

    cplx phi_sym(cplx z) const
    {
        bool flip = z.real() < 0;
        cplx z1 = flip ? -z : z;
        bool conj_ = z1.imag() < 0;
        cplx z2 = conj_ ? std::conj(z1) : z1;
        cplx v = phi_q1(z2);
        if (conj_)
            v = std::conj(v);
        return flip ? -v : v;
    }

    Jet3 jet_q1(cplx z) const
    {
        if (std::abs(z - c_) < 0.25 * (a_ - c_))
            return cauchy_jet(z);
        cplx u = z / c_;
        cplx zeta = std::asin(u);
        cplx s = std::sqrt(1.0 - u * u);
        cplx g1 = 1.0 / s;
        cplx g2 = u / (s * s * s);
        cplx g3 = (1.0 + 2.0 * u * u) / (s * s * s * s * s);
        // zeta(z) jet, chain through u = z/c
        Jet3 zj{{zeta, g1 / c_, 0.5 * g2 / (c_ * c_), g3 / (6.0 * c_ * c_ * c_)}};
        SnCnDn e = jacobi_sn_cn_dn(kappa_ * zeta, k_, kp_);
        double k2 = k_ * k_;
        cplx f0 = sqk_ * e.sn;
        cplx f1 = sqk_ * kappa_ * e.cn * e.dn;
        cplx f2 = -sqk_ * kappa_ * kappa_ * e.sn * (e.dn * e.dn + k2 * e.cn * e.cn);
        cplx f3 = sqk_ * kappa_ * kappa_ * kappa_ * e.cn * e.dn *
                  (4.0 * k2 * e.sn * e.sn - e.dn * e.dn - k2 * e.cn * e.cn);
        return compose(zj, f0, f1, f2, f3);
    }

    // Taylor coefficients from the Cauchy integral on a circle around z
    Jet3 cauchy_jet(cplx z) const
    {
        const int n = 96;
        double rho = 0.5 * (a_ - c_);
        Jet3 j{{0.0, 0.0, 0.0, 0.0}};
        for (int i = 0; i < n; ++i) {
            double t = 2 * pi * i / n;
            cplx e = std::polar(1.0, t);
            cplx v = phi_sym(z + rho * e);
            cplx ei = std::conj(e);
            cplx p = 1.0;
            for (int m = 0; m < 4; ++m) {
                j.c[m] += v * p;
                p *= ei;
            }
        }
        double r = 1.0;
        for (int m = 0; m < 4; ++m) {
            j.c[m] /= (n * r);
            r *= rho;
        }
        j.c[0] = phi_sym(z);
        return j;
    }

    bool newton(cplx w, cplx z0, cplx& out) const
    {
        cplx z = z0;
        if (!contains(z))
            z = 0.0;
        for (int it = 0; it < 100; ++it) {
            Jet3 j = phi_jet_nocheck(z);
            cplx r = j.c[0] - w;
            if (std::abs(r) < 1e-15) {
                out = z;
                return true;
            }
            cplx dz = -r / j.c[1];
            bool ok = false;
            for (int h = 0; h < 40; ++h) {
                cplx zn = z + dz;
                if (contains(zn) && std::abs(phi_sym(zn) - w) < std::abs(r)) {
                    z = zn;
                    ok = true;
                    break;
                }
                dz *= 0.5;
            }
            if (!ok) {
                if (std::abs(r) < 1e-13) {
                    out = z;
                    return true;
                }
                return false;
            }
        }
        Jet3 j = phi_jet_nocheck(z);
        if (std::abs(j.c[0] - w) < 1e-12) {
            out = z;
            return true;
        }
        return false;
    }

    Jet3 phi_jet_nocheck(cplx z) const
    {
        bool flip = z.real() < 0;
        cplx z1 = flip ? -z : z;
        bool conj_ = z1.imag() < 0;
        cplx z2 = conj_ ? std::conj(z1) : z1;
        Jet3 j = jet_q1(z2);
        if (conj_)
            for (auto& c : j.c)
                c = std::conj(c);
        if (flip) {
            j.c[0] = -j.c[0];
            j.c[2] = -j.c[2];
        }
        return j;
    }
};

// --------------------------------------------------------------------------

class ScMap : public ConformalMap {
public:
    ScMap(const PolygonSpec& spec, DomainKind kind) : spec_(spec), kind_(kind)
    {
        spec_.validate();
        for (double t : spec_.theta) {
            pre_.push_back(std::polar(1.0, t));
            cpre_.push_back(std::polar(1.0, -t));
        }
        verts_ = sc_vertices(spec_);
        diam_ = 0;
        L_ = 0;
        size_t m = verts_.size();
        for (size_t i = 0; i < m; ++i) {
            L_ += std::abs(verts_[(i + 1) % m] - verts_[i]);
            for (size_t j = 0; j < m; ++j)
                diam_ = std::max(diam_, std::abs(verts_[i] - verts_[j]));
        }
    }

    DomainKind kind() const override { return kind_; }
    std::string describe() const override
    {
        std::ostringstream os;
        os.precision(17);
        os << "kind=sc_polygon theta=";
        for (size_t i = 0; i < spec_.theta.size(); ++i)
            os << (i ? "," : "") << spec_.theta[i];
        os << " mu=";
        for (size_t i = 0; i < spec_.mu.size(); ++i)
            os << (i ? "," : "") << spec_.mu[i];
        os << " alpha=" << spec_.alpha.real() << "," << spec_.alpha.imag();
        os << " beta=" << spec_.beta.real() << "," << spec_.beta.imag();
        return os.str();
    }

    cplx phi(cplx z) const override
    {
        require_interior(*this, z, "phi");
        return solve(z);
    }

    Jet3 phi_jet(cplx z) const override
    {
        require_interior(*this, z, "phi_derivs");
        cplx w = solve(z);
        cplx a1 = dF(w);
        cplx L = logderiv(w);
        cplx Lp = logderiv_prime(w);
        cplx f2 = a1 * L;
        cplx f3 = a1 * (Lp + L * L);
        Jet3 j = invert_jet(w, a1, 0.5 * f2, f3 / 6.0);
        guard_boundary(*this, z, j);
        return j;
    }

    cplx f_inverse(cplx w) const override
    {
        require_unit(w, "f_inverse");
        return spec_.beta + integrate(0.0, w);
    }

    cplx schwarzian_of_F(cplx w) const override
    {
        require_unit(w, "schwarzian_of_F");
        for (cplx p : pre_)
            if (std::abs(w - p) < 1e-8)
                fail(errc::proximity, "schwarzian_of_F: too close to a prevertex");
        cplx L = logderiv(w);
        return logderiv_prime(w) - 0.5 * L * L;
    }

    bool contains(cplx z) const override
    {
        // crossing-number test against the polygon
        bool in = false;
        size_t m = verts_.size();
        for (size_t i = 0, j = m - 1; i < m; j = i++) {
            cplx a = verts_[i], b = verts_[j];
            if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
                double x = (b.real() - a.real()) * (z.imag() - a.imag()) / (b.imag() - a.imag()) + a.real();
                if (z.real() < x)
                    in = !in;
            }
        }
        return in;
    }
    cplx xi0() const override { return spec_.beta; }
    double diameter() const override { return diam_; }
    double boundary_length() const override { return L_; }
    std::vector<cplx> boundary_points(int n) const override
    {
        // n points equally spaced in arc length, starting at the first vertex
        std::vector<cplx> p;
        size_t m = verts_.size(), i = 0;
        double start = 0;
        for (int s = 0; s < n; ++s) {
            double t = L_ * s / n;
            while (i + 1 < m && t >= start + std::abs(verts_[i + 1] - verts_[i])) {
                start += std::abs(verts_[i + 1] - verts_[i]);
                ++i;
            }
            cplx a = verts_[i], b = verts_[(i + 1) % m];
            p.push_back(a + (b - a) * ((t - start) / std::abs(b - a)));
        }
        return p;
    }

    const PolygonSpec& spec() const { return spec_; }

    cplx dF(cplx w) const
    {
        cplx s = 0.0;
        for (size_t k = 0; k < pre_.size(); ++k)
            s -= spec_.mu[k] * std::log(1.0 - w * cpre_[k]);
        return spec_.alpha * std::exp(s);
    }

private:
    PolygonSpec spec_;
    DomainKind kind_;
    std::vector<cplx> pre_, cpre_, verts_;
    double diam_, L_;

    cplx logderiv(cplx w) const
    {
        cplx s = 0.0;
        for (size_t k = 0; k < pre_.size(); ++k)
            s += spec_.mu[k] * cpre_[k] / (1.0 - w * cpre_[k]);
        return s;
    }

    cplx logderiv_prime(cplx w) const
    {
        cplx s = 0.0;
        for (size_t k = 0; k < pre_.size(); ++k) {
            cplx d = 1.0 - w * cpre_[k];
            s += spec_.mu[k] * cpre_[k] * cpre_[k] / (d * d);
        }
        return s;
    }

    double prevertex_distance(cplx w) const
    {
        double d = 1e300;
        for (cplx p : pre_)
            d = std::min(d, std::abs(w - p));
        return d;
    }

    // int_a^b F'(s) ds along the straight segment, adaptive panels
    cplx integrate(cplx a, cplx b) const
    {
        const QuadratureRule& q = gauss_legendre_cached(20);
        cplx total = 0.0;
        struct Seg {
            cplx a, b;
        };
        std::vector<Seg> stack{{a, b}};
        int count = 0;
        while (!stack.empty()) {
            Seg s = stack.back();
            stack.pop_back();
            cplx mid = 0.5 * (s.a + s.b);
            double len = std::abs(s.b - s.a);
            if (len == 0.0)
                continue;
            if (len > 0.5 * prevertex_distance(mid) && len > 1e-15) {
                stack.push_back({s.a, mid});
                stack.push_back({mid, s.b});
                if (++count > 20000)
                    fail(errc::accuracy, "sc_integral: path too close to a prevertex");
                continue;
            }
            cplx h = 0.5 * (s.b - s.a);
            cplx acc = 0.0;
            for (size_t i = 0; i < q.nodes.size(); ++i)
                acc += q.weights[i] * dF(mid + h * q.nodes[i]);
            total += acc * h;
        }
        return total;
    }

    cplx solve(cplx z) const
    {
        struct Last {
            const ScMap* owner = nullptr;
            cplx z, w;
        };
        thread_local Last last;
        double scale = std::max(1.0, diam_);
        cplx w = 0.0, Fw = spec_.beta;
        if (last.owner == this && std::abs(z - last.z) < std::abs(z - spec_.beta)) {
            w = last.w;
            Fw = last.z;
        }
        bool ok = newton(z, w, Fw, scale);
        if (!ok) {
            // continuation from the centre
            w = 0.0;
            Fw = spec_.beta;
            int steps = 16;
            for (int attempt = 0; attempt < 6 && !ok; ++attempt, steps *= 4) {
                w = 0.0;
                Fw = spec_.beta;
                ok = true;
                for (int s = 1; s <= steps && ok; ++s) {
                    cplx target = spec_.beta + (z - spec_.beta) * (double(s) / steps);
                    ok = newton(target, w, Fw, scale);
                }
            }
            if (!ok)
                fail(errc::convergence, "sc map inversion did not converge");
        }
        last.owner = this;
        last.z = Fw;
        last.w = w;
        return w;
    }

    bool newton(cplx z, cplx& w, cplx& Fw, double scale) const
    {
        for (int it = 0; it < 80; ++it) {
            cplx r = z - Fw;
            // F is only known to |F'(w)| ulp(w) near a prevertex
            double floor = 4e-16 * std::abs(dF(w));
            if (std::abs(r) <= 2e-15 * scale + floor)
                return true;
            cplx d = r / dF(w);
            bool acc = false;
            for (int h = 0; h < 50; ++h) {
                cplx wn = w + d;
                if (std::abs(wn) < 1.0 - 1e-15) {
                    cplx Fn = Fw + integrate(w, wn);
                    if (std::abs(z - Fn) < std::abs(r)) {
                        w = wn;
                        Fw = Fn;
                        acc = true;
                        break;
                    }
                }
                d *= 0.5;
            }
            if (!acc)
                return std::abs(r) < 1e-12 * scale + 8 * floor;
        }
        return std::abs(z - Fw) < 1e-12 * scale + 32e-16 * std::abs(dF(w));
    }
};

// --------------------------------------------------------------------------

class SectorMap : public ConformalMap {
public:
    explicit SectorMap(int m) : m_(m)
    {
        if (m < 1)
            fail(errc::domain, "sector: m must be positive");
        am_ = sector_a(m);
        rot_ = std::polar(1.0, pi / (2.0 * m) - pi);
        xi_ = sector_xi(m);
    }

    DomainKind kind() const override { return DomainKind::disc_sector; }
    std::string describe() const override
    {
        std::ostringstream os;
        os << "kind=sector m=" << m_;
        return os.str();
    }

    cplx phi(cplx z) const override
    {
        require_interior(*this, z, "phi");
        cplx zeta = std::pow(z, m_);
        cplx f = (zeta * zeta + 2.0 * I * zeta + 1.0) / (zeta * zeta - 2.0 * I * zeta + 1.0);
        return rot_ * (f - am_) / (1.0 - am_ * f);
    }

    Jet3 phi_jet(cplx z) const override
    {
        require_interior(*this, z, "phi_derivs");
        double m = m_;
        Jet3 zeta = compose(Jet3::variable(z), std::pow(z, m_), m * std::pow(z, m_ - 1),
                            m * (m - 1) * std::pow(z, m_ - 2), m * (m - 1) * (m - 2) * std::pow(z, m_ - 3));
        Jet3 z2 = zeta * zeta;
        Jet3 num = z2 + 2.0 * I * zeta + 1.0;
        Jet3 den = z2 - 2.0 * I * zeta + 1.0;
        Jet3 f = num / den;
        Jet3 one = Jet3::constant(1.0);
        Jet3 t = rot_ * ((f - am_) / (one - am_ * f));
        guard_boundary(*this, z, t);
        return t;
    }

    cplx f_inverse(cplx w) const override
    {
        require_unit(w, "f_inverse");
        cplx e = std::conj(rot_);
        cplx v = (e * w + am_) / (1.0 + am_ * e * w);
        cplx s = std::sqrt(2.0 + 2.0 * v * v);
        cplx r1 = I * (-(1.0 + v) + s) / (1.0 - v);
        cplx r2 = I * (-(1.0 + v) - s) / (1.0 - v);
        cplx zeta = std::abs(r1) < std::abs(r2) ? r1 : r2;
        return std::pow(zeta, 1.0 / m_);
    }

    bool contains(cplx z) const override
    {
        if (!(std::norm(z) < 1.0))
            return false;
        double a = std::arg(z);
        return a > 0.0 && a < pi / m_;
    }
    cplx xi0() const override { return xi_; }
    double diameter() const override { return std::max(1.0, 2.0 * std::sin(pi / (2.0 * m_))); }
    double boundary_length() const override { return 2.0 + pi / m_; }
    std::vector<cplx> boundary_points(int n) const override
    {
        // equal arc length: segment [0,1], arc, then the second segment back to 0
        std::vector<cplx> p;
        double arc = pi / m_, L = 2.0 + arc;
        for (int i = 0; i < n; ++i) {
            double s = L * i / n;
            if (s < 1.0)
                p.push_back(s);
            else if (s < 1.0 + arc)
                p.push_back(std::polar(1.0, s - 1.0));
            else
                p.push_back(std::polar(L - s, arc));
        }
        return p;
    }

private:
    int m_;
    double am_;
    cplx rot_, xi_;
};

// --------------------------------------------------------------------------

class NormalizedMap : public ConformalMap {
public:
    NormalizedMap(MapPtr base, cplx c) : base_(std::move(base)), c_(c)
    {
        Jet3 j = base_->phi_jet(c);
        a_ = j.c[0];
        rot_ = std::polar(1.0, -std::arg(j.c[1]));
    }

    DomainKind kind() const override { return DomainKind::normalized; }
    std::string describe() const override
    {
        std::ostringstream os;
        os.precision(17);
        os << base_->describe() << " xi0=" << c_.real() << "," << c_.imag();
        return os.str();
    }

    cplx phi(cplx z) const override { return mob(base_->phi(z)); }

    Jet3 phi_jet(cplx z) const override
    {
        Jet3 b = base_->phi_jet(z);
        cplx u = b.c[0];
        cplx d = 1.0 - std::conj(a_) * u;
        double s = 1.0 - std::norm(a_);
        cplx g0 = mob(u);
        cplx g1 = rot_ * s / (d * d);
        cplx g2 = 2.0 * std::conj(a_) * rot_ * s / (d * d * d);
        cplx g3 = 6.0 * std::conj(a_) * std::conj(a_) * rot_ * s / (d * d * d * d);
        return compose(b, g0, g1, g2, g3);
    }

    cplx f_inverse(cplx w) const override
    {
        require_unit(w, "f_inverse");
        return base_->f_inverse(inv(w));
    }

    cplx schwarzian_of_F(cplx w) const override
    {
        require_unit(w, "schwarzian_of_F");
        cplx e = std::conj(rot_);
        cplx d = 1.0 + std::conj(a_) * e * w;
        cplx dinv = e * (1.0 - std::norm(a_)) / (d * d);
        return base_->schwarzian_of_F(inv(w)) * dinv * dinv;
    }

    bool contains(cplx z) const override { return base_->contains(z); }
    cplx xi0() const override { return c_; }
    double diameter() const override { return base_->diameter(); }
    double boundary_length() const override { return base_->boundary_length(); }
    std::vector<cplx> boundary_points(int n) const override { return base_->boundary_points(n); }

private:
    MapPtr base_;
    cplx c_, a_, rot_;

    cplx mob(cplx u) const { return rot_ * (u - a_) / (1.0 - std::conj(a_) * u); }
    cplx inv(cplx w) const
    {
        cplx e = std::conj(rot_);
        return (e * w + a_) / (1.0 + std::conj(a_) * e * w);
    }
};

// D' = scale * D + shift
class AffineMap : public ConformalMap {
public:
    AffineMap(MapPtr base, double scale, cplx shift) : base_(std::move(base)), s_(scale), b_(shift)
    {
        if (!(s_ > 0))
            fail(errc::invalid_argument, "make_affine: scale must be positive");
    }

    DomainKind kind() const override { return base_->kind(); }
    std::string describe() const override
    {
        std::ostringstream os;
        os.precision(17);
        os << base_->describe() << " scale=" << s_ << " shift=" << b_.real() << "," << b_.imag();
        return os.str();
    }

    cplx phi(cplx z) const override { return base_->phi(pull(z)); }
    Jet3 phi_jet(cplx z) const override
    {
        Jet3 j = base_->phi_jet(pull(z));
        double f = 1 / s_;
        for (int k = 1; k < 4; ++k, f /= s_)
            j.c[k] *= f;
        return j;
    }
    cplx f_inverse(cplx w) const override { return s_ * base_->f_inverse(w) + b_; }
    cplx schwarzian_of_F(cplx w) const override { return base_->schwarzian_of_F(w); }
    bool contains(cplx z) const override { return base_->contains(pull(z)); }
    cplx xi0() const override { return s_ * base_->xi0() + b_; }
    double diameter() const override { return s_ * base_->diameter(); }
    double boundary_length() const override { return s_ * base_->boundary_length(); }
    std::vector<cplx> boundary_points(int n) const override
    {
        std::vector<cplx> p = base_->boundary_points(n);
        for (cplx& z : p)
            z = s_ * z + b_;
        return p;
    }

private:
    MapPtr base_;
    double s_;
    cplx b_;

    cplx pull(cplx z) const { return (z - b_) / s_; }
};

}  // namespace

// --------------------------------------------------------------------------

cplx ConformalMap::schwarzian_of_F(cplx w) const
{
    require_unit(w, "schwarzian_of_F");
    cplx z = f_inverse(w);
    Jet3 j = phi_jet(z);
    cplx d1 = j.d1(), d2 = j.d2(), d3 = j.d3();
    cplx s = d3 / d1 - 1.5 * (d2 / d1) * (d2 / d1);
    return -s / (d1 * d1);
}

std::vector<cplx> ConformalMap::boundary_points(int n) const
{
    std::vector<cplx> p(n);
    for (int i = 0; i < n; ++i)
        p[i] = f_inverse(std::polar(1.0 - 1e-9, 2 * pi * i / n));
    return p;
}

PhiDerivs ConformalMap::phi_derivs(cplx z) const
{
    Jet3 j = phi_jet(z);
    return {j.d1(), j.d2(), j.d3()};
}

double ConformalMap::boundary_distance(cplx z) const
{
    Jet3 j = phi_jet(z);
    return (1.0 - std::abs(j.c[0])) / std::abs(j.c[1]);
}

cplx schwarzian_of_phi(const ConformalMap& map, cplx z)
{
    Jet3 j = map.phi_jet(z);
    cplx d1 = j.d1(), d2 = j.d2(), d3 = j.d3();
    return d3 / d1 - 1.5 * (d2 / d1) * (d2 / d1);
}

bool PolygonSpec::convex() const
{
    return std::all_of(mu.begin(), mu.end(), [](double m) { return m > 0; });
}

bool PolygonSpec::symmetric(double tol) const
{
    size_t n = theta.size();
    if (n % 2 != 0)
        return false;
    size_t h = n / 2;
    for (size_t k = 0; k < h; ++k) {
        if (std::abs(theta[k + h] - theta[k] - pi) > tol)
            return false;
        if (std::abs(mu[k + h] - mu[k]) > tol)
            return false;
    }
    return true;
}

void PolygonSpec::validate() const
{
    if (theta.size() < 3 || theta.size() != mu.size())
        fail(errc::invalid_argument, "polygon: need at least 3 prevertices with matching angles");
    double s = 0;
    for (size_t k = 0; k < mu.size(); ++k) {
        if (!(mu[k] > -1.0 && mu[k] < 1.0))
            fail(errc::invalid_argument, "polygon: exterior angles must lie in (-1,1)");
        if (theta[k] < 0 || theta[k] >= 2 * pi || (k > 0 && !(theta[k] > theta[k - 1])))
            fail(errc::invalid_argument, "polygon: prevertex angles must increase within [0,2pi)");
        s += mu[k];
    }
    if (std::abs(s - 2.0) > 1e-12)
        fail(errc::invalid_argument, "polygon: exterior angles must sum to 2");
    if (std::abs(alpha) == 0.0)
        fail(errc::invalid_argument, "polygon: scale must be nonzero");
}

MapPtr make_disc() { return std::make_shared<DiscMap>(); }
MapPtr make_ellipse(double a) { return std::make_shared<EllipseMap>(a); }

MapPtr make_rectangle(double aspect)
{
    return std::make_shared<ScMap>(rectangle_spec(aspect), DomainKind::rectangle);
}

MapPtr make_regular_polygon(int m)
{
    return std::make_shared<ScMap>(regular_polygon_spec(m), DomainKind::regular_polygon);
}

MapPtr make_sym_polygon(const PolygonSpec& spec)
{
    return std::make_shared<ScMap>(spec, DomainKind::sym_polygon);
}

MapPtr make_sector(int m) { return std::make_shared<SectorMap>(m); }

MapPtr make_normalized(MapPtr base, cplx c) { return std::make_shared<NormalizedMap>(std::move(base), c); }
MapPtr make_affine(MapPtr base, double scale, cplx shift)
{
    return std::make_shared<AffineMap>(std::move(base), scale, shift);
}

double modulus_ratio(double x, double xprime) { return elliptic_K(xprime, x) / elliptic_K(x, xprime); }

double modulus_ratio(double x) { return modulus_ratio(x, std::sqrt((1.0 - x) * (1.0 + x))); }

void ellipse_modulus(double a, double& k, double& kprime)
{
    if (!(a > 1.0))
        fail(errc::domain, "ellipse_modulus: a must exceed 1");
    double target = (2.0 / pi) * std::log1p(2.0 / (a - 1.0));
    // G(sin t) decreases in t on (0, pi/2)
    double lo = 0.0, hi = 0.5 * pi;
    for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
        double t = 0.5 * (lo + hi);
        double g = modulus_ratio(std::sin(t), std::cos(t));
        if (g > target)
            lo = t;
        else
            hi = t;
    }
    double t = 0.5 * (lo + hi);
    k = std::sin(t);
    kprime = std::cos(t);
}

double ellipse_axis_from_modulus(double k, double kprime)
{
    if (k == 0.0)
        return 1.0;
    double G = modulus_ratio(k, kprime);
    return 1.0 / std::tanh(pi * G / 4.0);
}

cplx sc_integral(const PolygonSpec& spec, cplx z)
{
    spec.validate();
    if (!(std::abs(z) < 1.0))
        fail(errc::domain, "sc_integral: point must lie in the unit disc");
    for (double t : spec.theta)
        if (std::abs(z - std::polar(1.0, t)) < 1e-6)
            fail(errc::proximity, "sc_integral: path hits the prevertex guard");
    ScMap m(spec, DomainKind::sym_polygon);
    return m.f_inverse(z);
}

std::vector<cplx> sc_vertices(const PolygonSpec& spec)
{
    const QuadratureRule& q = gauss_legendre_cached(20);
    size_t m = spec.theta.size();
    std::vector<cplx> v(m);
    for (size_t k = 0; k < m; ++k) {
        double mu = spec.mu[k];
        double p = mu > 0 ? 1.0 / (1.0 - mu) : 1.0;
        cplx dir = std::polar(1.0, spec.theta[k]);
        cplx total = 0.0;
        double hi = 1.0;
        for (int panel = 0; panel < 40; ++panel) {
            double lo = hi * 0.25;
            double c = 0.5 * (hi + lo), h = 0.5 * (hi - lo);
            for (size_t i = 0; i < q.nodes.size(); ++i) {
                double s = c + h * q.nodes[i];
                double sp = std::pow(s, p);
                double t = 1.0 - sp;
                cplx lg = -mu * std::log(sp);
                for (size_t j = 0; j < m; ++j)
                    if (j != k)
                        lg -= spec.mu[j] * std::log(1.0 - t * std::polar(1.0, spec.theta[k] - spec.theta[j]));
                cplx f = std::exp(lg) * p * std::pow(s, p - 1.0);
                total += q.weights[i] * h * f;
            }
            hi = lo;
        }
        v[k] = spec.beta + spec.alpha * dir * total;
    }
    return v;
}

double rectangle_theta1(double aspect)
{
    if (!(aspect > 0.0 && aspect <= 1.0))
        fail(errc::domain, "rectangle: aspect ratio must lie in (0,1]");
    if (aspect == 1.0)
        return 0.25 * pi;
    double lo = 0.0, hi = 0.25 * pi;
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        double t = 0.5 * (lo + hi);
        double g = modulus_ratio(std::cos(t), std::sin(t));
        if (g < aspect)
            lo = t;
        else
            hi = t;
    }
    return 0.5 * (lo + hi);
}

PolygonSpec rectangle_spec(double aspect)
{
    double t = rectangle_theta1(aspect);
    PolygonSpec s;
    s.theta = {t, pi - t, pi + t, 2 * pi - t};
    s.mu = {0.5, 0.5, 0.5, 0.5};
    return s;
}

PolygonSpec regular_polygon_spec(int m)
{
    if (m < 3)
        fail(errc::domain, "regular polygon: m must be at least 3");
    PolygonSpec s;
    for (int k = 0; k < m; ++k) {
        s.theta.push_back(2 * pi * k / m);
        s.mu.push_back(2.0 / m);
    }
    return s;
}

double sector_t(int m)
{
    return std::pow(2.0 * m + std::sqrt(4.0 * m * m + 1.0), -1.0 / (2.0 * m));
}

cplx sector_xi(int m) { return std::polar(sector_t(m), pi / (2.0 * m)); }

double sector_a(int m)
{
    double tau = std::pow(sector_t(m), m);
    return (1.0 - 2.0 * tau - tau * tau) / (1.0 + 2.0 * tau - tau * tau);
}

cplx sector_map(int m, cplx z)
{
    SectorMap s(m);
    return s.phi(z);
}

}  // namespace vp
