#pragma once

#include <complex>

namespace vp {

using cplx = std::complex<double>;

// truncated Taylor expansion f(z0 + h) = c0 + c1 h + c2 h^2 + c3 h^3
struct Jet3 {
    cplx c[4];

    static Jet3 constant(cplx v) { return {{v, 0.0, 0.0, 0.0}}; }
    static Jet3 variable(cplx z0) { return {{z0, 1.0, 0.0, 0.0}}; }

    cplx value() const { return c[0]; }
    cplx d1() const { return c[1]; }
    cplx d2() const { return 2.0 * c[2]; }
    cplx d3() const { return 6.0 * c[3]; }
};

inline Jet3 operator+(const Jet3& a, const Jet3& b)
{
    return {{a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2], a.c[3] + b.c[3]}};
}

inline Jet3 operator-(const Jet3& a, const Jet3& b)
{
    return {{a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2], a.c[3] - b.c[3]}};
}

inline Jet3 operator+(const Jet3& a, cplx s) { return {{a.c[0] + s, a.c[1], a.c[2], a.c[3]}}; }
inline Jet3 operator-(const Jet3& a, cplx s) { return {{a.c[0] - s, a.c[1], a.c[2], a.c[3]}}; }
inline Jet3 operator*(const Jet3& a, cplx s) { return {{a.c[0] * s, a.c[1] * s, a.c[2] * s, a.c[3] * s}}; }
inline Jet3 operator*(cplx s, const Jet3& a) { return a * s; }

inline Jet3 operator*(const Jet3& a, const Jet3& b)
{
    Jet3 r;
    r.c[0] = a.c[0] * b.c[0];
    r.c[1] = a.c[0] * b.c[1] + a.c[1] * b.c[0];
    r.c[2] = a.c[0] * b.c[2] + a.c[1] * b.c[1] + a.c[2] * b.c[0];
    r.c[3] = a.c[0] * b.c[3] + a.c[1] * b.c[2] + a.c[2] * b.c[1] + a.c[3] * b.c[0];
    return r;
}

inline Jet3 operator/(const Jet3& a, const Jet3& b)
{
    Jet3 q;
    q.c[0] = a.c[0] / b.c[0];
    q.c[1] = (a.c[1] - q.c[0] * b.c[1]) / b.c[0];
    q.c[2] = (a.c[2] - q.c[0] * b.c[2] - q.c[1] * b.c[1]) / b.c[0];
    q.c[3] = (a.c[3] - q.c[0] * b.c[3] - q.c[1] * b.c[2] - q.c[2] * b.c[1]) / b.c[0];
    return q;
}

// g o f where g0..g3 are g and its first three derivatives at f.c[0]
inline Jet3 compose(const Jet3& f, cplx g0, cplx g1, cplx g2, cplx g3)
{
    Jet3 r;
    r.c[0] = g0;
    r.c[1] = g1 * f.c[1];
    r.c[2] = g1 * f.c[2] + 0.5 * g2 * f.c[1] * f.c[1];
    r.c[3] = g1 * f.c[3] + g2 * f.c[1] * f.c[2] + g3 * f.c[1] * f.c[1] * f.c[1] / 6.0;
    return r;
}

// jet from value and derivatives
inline Jet3 from_derivs(cplx v, cplx d1, cplx d2, cplx d3)
{
    return {{v, d1, 0.5 * d2, d3 / 6.0}};
}

}  // namespace vp
