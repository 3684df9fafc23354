#include "tglab/cli.hpp"
#include "tglab/error.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kUsageError = 2;

int fail_input(const std::string& msg) {
    std::cerr << "tglab: " << msg << "\n";
    return kUsageError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toric GKZ / quantum D-module checks"};
    app.require_subcommand(1);

    std::string spec_path, variant = "plain", format = "json", beta, lambda;
    long degree = 0, dmax = 0, seed = 0, window = 0, cutoff = 0;
    std::vector<CLI::App*> subs;
    for (const auto& name : tglab::cli::commands()) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " checks");
        sub->add_option("--spec", spec_path, "problem specification (JSON)")->required();
        sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--seed", seed, "seed for random draws");
        if (name == "gkz") {
            sub->add_option("--variant,--gkz-variant", variant, "plain, homog, hat, star or qdm")
                ->check(CLI::IsMember({"plain", "homog", "hat", "star", "qdm"}));
            sub->add_option("--beta", beta, "parameter vector, e.g. 0,1,-1");
        }
        if (name == "semigroup") sub->add_option("--degree", degree, "degree bound");
        if (name == "ifun") sub->add_option("--dmax", dmax, "largest degree coordinate");
        if (name == "lg") {
            sub->add_option("--lambda", lambda, "parameter point, e.g. 1,2/3,-1");
            sub->add_option("--window", window, "stabilization window");
            sub->add_option("--cutoff", cutoff, "largest weight");
        }
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    CLI::App* sub = nullptr;
    for (auto* s : subs)
        if (s->parsed()) sub = s;
    const std::string command = sub->get_name();

    std::ifstream in(spec_path);
    if (!in) return fail_input("IOError: cannot read " + spec_path);
    std::stringstream buf;
    buf << in.rdbuf();

    auto given = [&](const std::string& opt) {
        const CLI::Option* o = sub->get_option_no_throw(opt);
        return o != nullptr && o->count() > 0;
    };
    tglab::cli::Flags flags;
    try {
        flags.variant = variant;
        if (given("--beta")) flags.beta = tglab::cli::parse_rational_list(beta);
        if (given("--lambda")) flags.lambda = tglab::cli::parse_rational_list(lambda);
        if (given("--degree")) flags.degree = degree;
        if (given("--dmax")) flags.dmax = dmax;
        if (given("--seed")) flags.seed = seed;
        if (given("--window")) flags.window = window;
        if (given("--cutoff")) flags.cutoff = cutoff;

        tglab::cli::ProblemSpec spec = tglab::cli::parse_spec(buf.str());
        tglab::cli::Report report = tglab::cli::run_command(command, spec, flags);
        if (format == "text")
            std::cout << tglab::cli::render_text(report);
        else
            std::cout << report.body.dump(2) << "\n";
        return report.passed ? 0 : 1;
    } catch (const tglab::Error& e) {
        return fail_input(e.what());
    }
}
