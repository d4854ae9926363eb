#include <cctype>
#include <iostream>

#include <CLI11.hpp>

#include <lierep/cli.hpp>

int main(int argc, char **argv) {
    using namespace lierep::cli;
    CLI::App app{"Tensor product decompositions and folding comparisons for SL/Spin and SL/Sp pairs"};
    app.set_help_flag("-h,--help", "Print this help message and exit");

    Invocation inv;
    std::string verb;
    app.add_option("verb", verb, "decompose | fold | unfold | triple | cell | table | scan | verify | special | "
                                 "question1 | question2 | twisted")
        ->required();
    // Weights are taken from the leftover arguments: CLI11 would otherwise
    // split a bracketed "[1,0,1]" into three values.
    app.allow_extras();
    app.footer("Arguments after the verb: weights in bracket notation, or integers (special, question1, "
               "question2).");

    std::map<std::string, std::string> raw;
    auto opt = [&](const std::string &key, const std::string &help) {
        app.add_option("--" + key, raw[key], help);
    };
    opt("family", "Root system letter for decompose: A, B or C");
    opt("rank", "Rank for decompose (default: length of the first weight)");
    opt("pair", "even (A_{2n-1} with B_n) or odd (A_{2n} with C_n)");
    opt("n", "Rank n of the folded group");
    opt("height", "Coordinate bound for scan and verify");
    opt("filter", "Triple filter, e.g. 'last_zero(1) && last_zero(2)'");
    opt("conjecture", "C1 (even pair) or C3 (odd pair) for verify");
    opt("format", "paper, long or json");
    opt("workers", "Worker threads for tables and scans");
    opt("cache", "Path of the on-disk decomposition cache");
    opt("cache-format", "json or bin");
    opt("cache-capacity", "Character cache capacity (weight tables)");
    opt("limit", "Maximum number of triples a scan enumerates");
    opt("preset", "Table headers: a3b2, a5b3 or a4c2");
    bool deterministic = false;
    app.add_flag("--deterministic", deterministic, "Omit timing and cache statistics from the report");
    std::string config;
    app.add_option("--config", config, "Flat key = value settings file");
    app.add_option("--row", inv.rows, "Table row header (folded side), repeatable")->allow_extra_args(false);
    app.add_option("--col", inv.cols, "Table column header (folded side), repeatable")->allow_extra_args(false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : static_cast<int>(lierep::ErrorCode::parse);
    }

    inv.verb = verb;
    for (const auto &arg : app.remaining()) {
        if (arg.size() > 1 && arg[0] == '-' && !std::isdigit(static_cast<unsigned char>(arg[1]))) {
            std::cerr << "lierep: error[parse] code=" << static_cast<int>(lierep::ErrorCode::parse)
                      << ": unknown option " << arg << "\n";
            return static_cast<int>(lierep::ErrorCode::parse);
        }
        inv.args.push_back(arg);
    }
    for (const auto &[key, value] : raw)
        if (app.count("--" + key))
            inv.flags[key] = value;
    if (deterministic)
        inv.flags["deterministic"] = "true";
    if (app.count("--config"))
        inv.config = config;
    return run(inv, std::cout, std::cerr, process_environment());
}
