#pragma once

#include "tglab/toricfan.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace tglab::cli {

using Json = nlohmann::ordered_json;

struct SpecOptions {
    long degree_bound = 6;
    long d_max = 8;
    long seed = 1;
    long stabilization_window = 2;
    long cutoff = 0;
};

struct ProblemSpec {
    std::string name;
    Fan fan;
    IntegerMatrix bundles;  // c x m
    std::optional<IntegerMatrix> basis_p;
    std::optional<std::vector<Rat>> lambda;
    SpecOptions options;
};

// Throws ParseError (with line and column) on malformed JSON and InvalidSpec on schema violations.
ProblemSpec parse_spec(const std::string& text);
Json spec_to_json(const ProblemSpec& spec);

struct Flags {
    std::string variant = "plain";
    std::optional<std::vector<Rat>> beta;
    std::optional<std::vector<Rat>> lambda;
    std::optional<long> degree;
    std::optional<long> dmax;
    std::optional<long> seed;
    std::optional<long> window;
    std::optional<long> cutoff;
};

struct Report {
    Json body;
    bool passed = true;
};

const std::vector<std::string>& commands();
Report run_command(const std::string& command, const ProblemSpec& spec, const Flags& flags);
std::string render_text(const Report& report);

// Parses "1,-2,3/4" or a single value.
std::vector<Rat> parse_rational_list(const std::string& s);

}  // namespace tglab::cli
