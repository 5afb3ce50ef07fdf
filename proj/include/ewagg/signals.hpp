#pragma once

#include <span>
#include <string>
#include <string_view>

#include "ewagg/types.hpp"

namespace ewagg {

enum class SignalName { Blocks, Doppler, HeaviSine, Ramp, PieceRegular, PiecePolynomial };

/// Accepts the canonical names ("Blocks", "PieceRegular", ...) and the
/// hyphenated WaveLab spellings ("Piece-Regular"), case-insensitively.
SignalName parse_signal_name(std::string_view name);
std::string_view to_string(SignalName name);
std::span<const SignalName> all_signal_names();

struct Signal {
    Vector values;
    std::string name;

    Index size() const { return values.size(); }
};

/// WaveLab MakeSignal formula sampled at t_i = i/n, i = 1..n, before any
/// normalization.
Vector raw_test_signal(SignalName name, int n);

/// Test signal normalized to unit empirical norm. With `smooth` the
/// discrete antiderivative cumsum(f)/n is taken first, then renormalized.
Signal make_test_signal(SignalName name, int n, bool smooth);
Signal make_test_signal(std::string_view name, int n, bool smooth);

/// (1/n) * sum v_i^2
double empirical_norm_sq(const Vector& v);

}  // namespace ewagg
