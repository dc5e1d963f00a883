#pragma once

#include <stdexcept>
#include <string>

namespace fctp {

// Error categories raised by construction, solving, lifting and I/O paths.
enum class Errc {
    negative_fixed_cost,
    duplicate_arc,
    self_loop,
    non_integer_capacity,
    not_a_tree,
    unsupported_variant,
    corrupt_tables,
    infeasible_flow,
    not_in_p,
    zero_capacity_arc_with_flow,
    not_in_qsn,
    invalid_three_partition,
    too_large,
    budget_exceeded,
    unreachable_target,
    unknown_variable,
    parse_error,
    validation_error,
    io_error,
    name_too_long,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::negative_fixed_cost: return "NegativeFixedCost";
        case Errc::duplicate_arc: return "DuplicateArc";
        case Errc::self_loop: return "SelfLoop";
        case Errc::non_integer_capacity: return "NonIntegerCapacity";
        case Errc::not_a_tree: return "NotATree";
        case Errc::unsupported_variant: return "UnsupportedVariant";
        case Errc::corrupt_tables: return "CorruptTables";
        case Errc::infeasible_flow: return "InfeasibleFlow";
        case Errc::not_in_p: return "NotInP";
        case Errc::zero_capacity_arc_with_flow: return "ZeroCapacityArcWithFlow";
        case Errc::not_in_qsn: return "NotInQsn";
        case Errc::invalid_three_partition: return "InvalidThreePartition";
        case Errc::too_large: return "TooLarge";
        case Errc::budget_exceeded: return "BudgetExceeded";
        case Errc::unreachable_target: return "UnreachableTarget";
        case Errc::unknown_variable: return "UnknownVariable";
        case Errc::parse_error: return "ParseError";
        case Errc::validation_error: return "ValidationError";
        case Errc::io_error: return "IoError";
        case Errc::name_too_long: return "NameTooLong";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace fctp
