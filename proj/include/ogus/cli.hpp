#pragma once

// Command surface: motive config files, place policy and plain-text reports.

#include <optional>
#include <string>
#include <vector>

#include "ogus/motive.hpp"

namespace ogus::cli {

struct MotiveConfig {
    std::optional<long> field_d;
    KummerMotive motive;
};

// Lines `key = value`; keys field_d, r, s and u[i][j] (0-based) with values
// `num/den` or integers; `#` starts a comment. Throws ConfigParse with the
// line number, NonPositiveEntry for entries <= 0.
MotiveConfig parse_motive_config(const std::string& text);

// Whitespace-separated rationals, one row per line, `#` comments.
QMatrix parse_matrix(const std::string& text);

// Comma-separated coefficients from the leading term down.
QPoly parse_charpoly(const std::string& text);

struct PlacePolicy {
    bool automatic = true;
    long bound = 50;
    std::vector<long> primes;
};

// `auto:<bound>` or `list:p1,p2,...`. Throws ConfigParse.
PlacePolicy parse_place_policy(const std::string& text);

struct Options {
    PlacePolicy places;
    int precision = 40;
    mpz_class bound = 1000000;
    long field_d = 1;
};

enum class Status { Ok, Violation, Error };

struct Report {
    Status status = Status::Ok;
    std::string text;
    int exit_code() const { return status == Status::Ok ? 0 : status == Status::Violation ? 2 : 1; }
};

struct Input {
    std::string name;
    std::string text;
};

Report run_realize(const Input& config, const Options& options);
Report run_hom(const Input& left, const Input& right, const Options& options);
Report run_decompose(const Input& matrix, long p, int n, const std::string& charpoly, int precision);
Report run_check(const Input& config, const Options& options, int twist = 0);

// 64-bit FNV-1a of the input, as 16 hex digits.
std::string digest(const std::string& text);

}  // namespace ogus::cli
