#pragma once

#include <stdexcept>
#include <string>

namespace selfsim {

enum class Errc {
    no_root_in_interval,
    multiple_roots_in_interval,
    beta_out_of_range,
    degree_cap_exceeded,
    mixed_contexts,
    not_in_t,
    not_sorted,
    cap_exceeded,
    unresolved_bn,
    has_cycle,
    requires_bn,
    empty_input,
    blowup_guard,
    parse_error,
    unsupported,
    internal,
};

inline const char* errc_name(Errc c)
{
    switch (c) {
    case Errc::no_root_in_interval: return "NoRootInInterval";
    case Errc::multiple_roots_in_interval: return "MultipleRootsInInterval";
    case Errc::beta_out_of_range: return "BetaOutOfRange";
    case Errc::degree_cap_exceeded: return "DegreeCapExceeded";
    case Errc::mixed_contexts: return "MixedContexts";
    case Errc::not_in_t: return "NotInT";
    case Errc::not_sorted: return "NotSorted";
    case Errc::cap_exceeded: return "CapExceeded";
    case Errc::unresolved_bn: return "UnresolvedBN";
    case Errc::has_cycle: return "HasCycle";
    case Errc::requires_bn: return "RequiresBN";
    case Errc::empty_input: return "EmptyInput";
    case Errc::blowup_guard: return "BlowupGuard";
    case Errc::parse_error: return "ParseError";
    case Errc::unsupported: return "Unsupported";
    case Errc::internal: return "InternalError";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg, int index = -1)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg)
        , code_(code)
        , index_(index)
    {
    }

    Errc code() const noexcept { return code_; }

    // For NotInT: the 1-based index of the offending translation entry.
    int index() const noexcept { return index_; }

private:
    Errc code_;
    int index_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg, int index = -1)
{
    throw Error(code, msg, index);
}

} // namespace selfsim
