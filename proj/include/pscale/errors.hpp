#pragma once

#include <stdexcept>
#include <string>

namespace pscale {

// Every library failure maps to one of these codes; the CLI uses the code
// value as its process exit status, so values must stay distinct and nonzero.
enum class ErrorCode : int {
    degenerate_anchor = 10,
    non_finite_input = 11,
    missing_anchor = 12,
    unknown_column = 13,
    unknown_category = 14,
    invalid_spec = 15,
    rank_deficient = 20,
    insufficient_rows = 21,
    zero_variance = 22,
    empty_group = 23,
    too_few_predictors = 24,
    missing_iv = 25,
    schema_mismatch = 26,
    parse_error = 30,
    empty_file = 31,
    io_error = 32,
    config_error = 33,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }
    int exit_code() const { return static_cast<int>(code_); }

private:
    ErrorCode code_;
};

#define PSCALE_DEFINE_ERROR(name, code)                       \
    class name : public Error {                               \
    public:                                                   \
        explicit name(const std::string& message)             \
            : Error(ErrorCode::code, message) {}              \
    }

PSCALE_DEFINE_ERROR(DegenerateAnchor, degenerate_anchor);
PSCALE_DEFINE_ERROR(NonFiniteInput, non_finite_input);
PSCALE_DEFINE_ERROR(MissingAnchor, missing_anchor);
PSCALE_DEFINE_ERROR(UnknownColumn, unknown_column);
PSCALE_DEFINE_ERROR(UnknownCategory, unknown_category);
PSCALE_DEFINE_ERROR(InvalidSpec, invalid_spec);
PSCALE_DEFINE_ERROR(RankDeficient, rank_deficient);
PSCALE_DEFINE_ERROR(InsufficientRows, insufficient_rows);
PSCALE_DEFINE_ERROR(ZeroVariance, zero_variance);
PSCALE_DEFINE_ERROR(EmptyGroup, empty_group);
PSCALE_DEFINE_ERROR(TooFewPredictors, too_few_predictors);
PSCALE_DEFINE_ERROR(MissingIv, missing_iv);
PSCALE_DEFINE_ERROR(SchemaMismatch, schema_mismatch);
PSCALE_DEFINE_ERROR(ParseError, parse_error);
PSCALE_DEFINE_ERROR(EmptyFile, empty_file);
PSCALE_DEFINE_ERROR(IoError, io_error);
PSCALE_DEFINE_ERROR(ConfigError, config_error);

#undef PSCALE_DEFINE_ERROR

}  // namespace pscale
