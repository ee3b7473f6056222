#ifndef PDISCO_JET_HPP
#define PDISCO_JET_HPP

#include <cmath>

namespace pdisco {

// First-order forward-mode dual number with a nestable coefficient type.
// Jet<double> carries one derivative; Jet<Jet<double>> carries two, and so
// on. Nesting k levels and seeding every level's derivative slot against the
// same input variable yields the exact k-th derivative in the all-derivative
// component (x + e1 + ... + ek with ei^2 = 0: the e1...ek coefficient of
// f(x + sum ei) is f^(k)(x)).
template <class T>
struct Jet {
    T f{};  // value
    T d{};  // derivative

    constexpr Jet() = default;
    constexpr Jet(T value) : f(value), d() {}  // NOLINT: implicit scalar lift
    constexpr Jet(T value, T deriv) : f(value), d(deriv) {}

    constexpr Jet& operator+=(const Jet& o) {
        f += o.f;
        d += o.d;
        return *this;
    }
    constexpr Jet& operator-=(const Jet& o) {
        f -= o.f;
        d -= o.d;
        return *this;
    }
    constexpr Jet& operator*=(const Jet& o) {
        d = f * o.d + d * o.f;
        f = f * o.f;
        return *this;
    }
};

template <class T>
constexpr Jet<T> operator+(Jet<T> a, const Jet<T>& b) { return a += b; }
template <class T>
constexpr Jet<T> operator-(Jet<T> a, const Jet<T>& b) { return a -= b; }
template <class T>
constexpr Jet<T> operator-(const Jet<T>& a) { return {-a.f, -a.d}; }
template <class T>
constexpr Jet<T> operator*(const Jet<T>& a, const Jet<T>& b) {
    return {a.f * b.f, a.f * b.d + a.d * b.f};
}

// double mixes at any nesting depth
template <class T>
constexpr Jet<T> operator+(Jet<T> a, double s) { a.f += s; return a; }
template <class T>
constexpr Jet<T> operator+(double s, Jet<T> a) { a.f += s; return a; }
template <class T>
constexpr Jet<T> operator-(Jet<T> a, double s) { a.f -= s; return a; }
template <class T>
constexpr Jet<T> operator-(double s, const Jet<T>& a) { return {s - a.f, -a.d}; }
template <class T>
constexpr Jet<T> operator*(const Jet<T>& a, double s) { return {a.f * s, a.d * s}; }
template <class T>
constexpr Jet<T> operator*(double s, const Jet<T>& a) { return a * s; }

inline double tanh_v(double x) { return std::tanh(x); }
template <class T>
Jet<T> tanh_v(const Jet<T>& a) {
    const T th = tanh_v(a.f);
    return {th, a.d * (1.0 - th * th)};  // d tanh = 1 - tanh^2
}

using Jet1 = Jet<double>;
using Jet2 = Jet<Jet1>;
using Jet3 = Jet<Jet2>;
using Jet4 = Jet<Jet3>;

inline void assign_scalar(double& dst, double v) { dst = v; }
template <class T>
void assign_scalar(Jet<T>& dst, double v) {
    dst = Jet<T>{};
    assign_scalar(dst.f, v);
}

// Writes 1 into the value component, leaving cross-derivative slots zero.
inline void set_one(double& v) { v = 1.0; }
template <class T>
void set_one(Jet<T>& v) { set_one(v.f); }

inline void seed_all_levels(double&) {}
template <class T>
void seed_all_levels(Jet<T>& x) {
    set_one(x.d);
    seed_all_levels(x.f);
}

// Input variable: every nesting level differentiates against it.
template <class T>
T make_seeded(double value) {
    T x{};
    assign_scalar(x, value);
    seed_all_levels(x);
    return x;
}

// Plain constant lifted to jet type T.
template <class T>
T make_constant(double value) {
    T x{};
    assign_scalar(x, value);
    return x;
}

inline double deepest_value(double x) { return x; }
template <class T>
double deepest_value(const Jet<T>& x) { return deepest_value(x.f); }

// k-th derivative of a fully seeded evaluation: descend k derivative slots,
// then value slots to the bottom. k = 0 gives the plain value.
inline double derivative_order(double x, int k) { return k == 0 ? x : 0.0; }
template <class T>
double derivative_order(const Jet<T>& x, int k) {
    return k == 0 ? deepest_value(x) : derivative_order(x.d, k - 1);
}

}  // namespace pdisco

#endif
