#include "ewagg/signals.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ewagg {
namespace {

constexpr std::array kAllSignals{SignalName::Blocks,   SignalName::Doppler,      SignalName::HeaviSine,
                                 SignalName::Ramp,     SignalName::PieceRegular, SignalName::PiecePolynomial};

double sign(double x) { return (x > 0.0) - (x < 0.0); }

// Jump locations shared by Blocks and Bumps.
constexpr std::array<double, 11> kPositions{.1, .13, .15, .23, .25, .40, .44, .65, .76, .78, .81};

Vector time_grid(int n) {
    Vector t(n);
    for (int i = 0; i < n; ++i) t[i] = static_cast<double>(i + 1) / n;
    return t;
}

// Blocks: sum_j h_j (1 + sign(t - p_j)) / 2.
Vector blocks(const Vector& t) {
    constexpr std::array<double, 11> heights{4, -5, 3, -4, 5, -4.2, 2.1, 4.3, -3.1, 2.1, -4.2};
    Vector s = Vector::Zero(t.size());
    for (Index i = 0; i < t.size(); ++i)
        for (std::size_t j = 0; j < kPositions.size(); ++j)
            s[i] += heights[j] * (1.0 + sign(t[i] - kPositions[j])) / 2.0;
    return s;
}

// Bumps: sum_j h_j / (1 + |t - p_j| / w_j)^4, used inside Piece-Regular.
Vector bumps(const Vector& t) {
    constexpr std::array<double, 11> heights{4, 5, 3, 4, 5, 4.2, 2.1, 4.3, 3.1, 5.1, 4.2};
    constexpr std::array<double, 11> widths{.005, .005, .006, .01, .01, .03, .01, .01, .005, .008, .005};
    Vector s = Vector::Zero(t.size());
    for (Index i = 0; i < t.size(); ++i)
        for (std::size_t j = 0; j < kPositions.size(); ++j)
            s[i] += heights[j] / std::pow(1.0 + std::abs((t[i] - kPositions[j]) / widths[j]), 4);
    return s;
}

// Doppler: sqrt(t(1-t)) sin(2 pi 1.05 / (t + .05)).
Vector doppler(const Vector& t) {
    Vector s(t.size());
    for (Index i = 0; i < t.size(); ++i)
        s[i] = std::sqrt(t[i] * (1.0 - t[i])) * std::sin(2.0 * std::numbers::pi * 1.05 / (t[i] + .05));
    return s;
}

// HeaviSine: 4 sin(4 pi t) - sign(t - .3) - sign(.72 - t).
Vector heavisine(const Vector& t) {
    Vector s(t.size());
    for (Index i = 0; i < t.size(); ++i)
        s[i] = 4.0 * std::sin(4.0 * std::numbers::pi * t[i]) - sign(t[i] - .3) - sign(.72 - t[i]);
    return s;
}

// Ramp: t - 1(t >= .37).
Vector ramp(const Vector& t) {
    Vector s(t.size());
    for (Index i = 0; i < t.size(); ++i) s[i] = t[i] - (t[i] >= .37 ? 1.0 : 0.0);
    return s;
}

// Index helpers below mirror the 1-based MATLAB ranges of MakeSignal;
// assign(s, lo, hi, f) writes s(lo:hi) = f(1:hi-lo+1).
void assign(Vector& s, int lo, int hi, const Vector& src, int src_lo = 1) {
    for (int i = lo; i <= hi; ++i) s[i - 1] = src[src_lo + (i - lo) - 1];
}

// Mirror the first n - 5 fix(n/5) samples into the tail.
void mirror_tail(Vector& s, int n) {
    const int n5 = n / 5;
    const int rest = n - 5 * n5;
    for (int k = 0; k < rest; ++k) s[5 * n5 + k] = s[rest - 1 - k];
}

Vector ramp_up(int len) {
    Vector u(len);
    for (int i = 0; i < len; ++i) u[i] = static_cast<double>(i + 1) / len;
    return u;
}

Vector piece_regular(const Vector& t) {
    const int n = static_cast<int>(t.size());
    const int n12 = n / 12, n7 = n / 7, n5 = n / 5, n3 = n / 3, n2 = n / 2, n20 = n / 20;
    Vector sig = Vector::Zero(n);

    const Vector sig1 = -15.0 * bumps(t);
    const Vector sig2 = (-(4.0 * ramp_up(n12).array()).exp()).matrix();
    const Vector sig5 = ((4.0 * ramp_up(n7).array()).exp() - std::exp(4.0)).matrix();
    const double width = 6.0 / 40.0;
    const Vector u3 = ramp_up(n3);
    Vector sig6(n3);
    for (int i = 0; i < n3; ++i)
        sig6[i] = -70.0 * std::exp(-((u3[i] - 0.5) * (u3[i] - 0.5)) / (2.0 * width * width));

    assign(sig, 1, n7, sig6);
    for (int i = n7 + 1; i <= n5; ++i) sig[i - 1] = 0.5 * sig6[i - 1];
    assign(sig, n5 + 1, n3, sig6, n5 + 1);
    assign(sig, n3 + 1, n2, sig1, n3 + 1);
    assign(sig, n2 + 1, n2 + n12, sig2);
    // sig(n2 + 2 n12 : -1 : n2 + n12 + 1) = sig2
    for (int k = 0; k < n12; ++k) sig[n2 + 2 * n12 - 1 - k] = sig2[k];
    for (int i = n2 + 2 * n12 + n20 + 1; i <= n2 + 2 * n12 + 3 * n20; ++i) sig[i - 1] = -25.0;
    const int k0 = n2 + 2 * n12 + 3 * n20;
    assign(sig, k0 + 1, k0 + n7, sig5);
    mirror_tail(sig, n);

    const double bias = sig.mean();
    return (bias - sig.array()).matrix();
}

Vector piece_polynomial(const Vector& t) {
    const int n = static_cast<int>(t.size());
    const int n5 = n / 5, n10 = n / 10, n20 = n / 20;
    const Vector u = ramp_up(n5);
    const auto a = u.array();
    const Vector sig1 = (20.0 * (a.cube() + a.square() + 4.0)).matrix();
    const Vector sig3 = (40.0 * (2.0 * a.cube() + a) + 100.0).matrix();
    const Vector sig2 = (10.0 * a.cube() + 45.0).matrix();
    const Vector sig4 = (16.0 * a.square() + 8.0 * a + 16.0).matrix();
    const Vector sig5 = (20.0 * (a + 4.0)).matrix();

    Vector sig = Vector::Zero(n);
    assign(sig, 1, n5, sig1);
    for (int k = 0; k < n5; ++k) sig[2 * n5 - 1 - k] = sig2[k];
    assign(sig, 2 * n5 + 1, 3 * n5, sig3);
    assign(sig, 3 * n5 + 1, 4 * n5, sig4);
    for (int k = 0; k < n5; ++k) sig[4 * n5 + k] = sig5[n5 - 1 - k];
    mirror_tail(sig, n);
    for (int i = n20 + 1; i <= n20 + n10; ++i) sig[i - 1] = 10.0;
    for (int i = n - n10 + 1; i <= n + n20 - n10; ++i) sig[i - 1] = 150.0;

    return (sig.array() - sig.mean()).matrix();
}

std::string normalize_name(std::string_view name) {
    std::string out;
    for (char c : name)
        if (c != '-' && c != '_' && c != ' ') out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return out;
}

}  // namespace

SignalName parse_signal_name(std::string_view name) {
    const std::string key = normalize_name(name);
    for (SignalName s : kAllSignals)
        if (normalize_name(to_string(s)) == key) return s;
    throw std::invalid_argument("unknown signal name: " + std::string(name));
}

std::string_view to_string(SignalName name) {
    switch (name) {
        case SignalName::Blocks: return "Blocks";
        case SignalName::Doppler: return "Doppler";
        case SignalName::HeaviSine: return "HeaviSine";
        case SignalName::Ramp: return "Ramp";
        case SignalName::PieceRegular: return "PieceRegular";
        case SignalName::PiecePolynomial: return "PiecePolynomial";
    }
    return "?";
}

std::span<const SignalName> all_signal_names() { return kAllSignals; }

Vector raw_test_signal(SignalName name, int n) {
    if (n < 8) throw std::invalid_argument("test signals need n >= 8, got " + std::to_string(n));
    const Vector t = time_grid(n);
    switch (name) {
        case SignalName::Blocks: return blocks(t);
        case SignalName::Doppler: return doppler(t);
        case SignalName::HeaviSine: return heavisine(t);
        case SignalName::Ramp: return ramp(t);
        case SignalName::PieceRegular: return piece_regular(t);
        case SignalName::PiecePolynomial: return piece_polynomial(t);
    }
    throw std::invalid_argument("unknown signal");
}

Signal make_test_signal(SignalName name, int n, bool smooth) {
    Vector v = raw_test_signal(name, n);
    if (smooth) {
        for (Index i = 1; i < v.size(); ++i) v[i] += v[i - 1];
        v /= static_cast<double>(n);
    }
    v /= std::sqrt(empirical_norm_sq(v));
    std::string label(to_string(name));
    if (smooth) label += "-smooth";
    return Signal{std::move(v), std::move(label)};
}

Signal make_test_signal(std::string_view name, int n, bool smooth) {
    return make_test_signal(parse_signal_name(name), n, smooth);
}

double empirical_norm_sq(const Vector& v) {
    if (v.size() == 0) return 0.0;
    return v.squaredNorm() / static_cast<double>(v.size());
}

}  // namespace ewagg
