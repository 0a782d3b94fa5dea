#include "superkahler/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace superkahler;

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of Kaehler and hyper-Kaehler structures on polynomial super charts"};
    app.require_subcommand(1);

    std::string reportPath, signTable, omega = "literal";
    CommandOptions opt;
    app.add_option("--report", reportPath, "write the JSON report to this path");
    app.add_option("--seed", opt.seed, "seed for randomized commands");
    app.add_option("--trials", opt.trials, "trial count for search and oracle-selftest");
    app.add_option("--max-dim", opt.maxDim, "bound on n+m for search, on n and m for table");
    app.add_option("--sign-table", signTable, "six signs for (1,2) (2,1) (1,3) (3,1) (2,3) (3,2)");
    app.add_option("--omega", omega, "omega convention: literal | sign-decorated")
        ->check(CLI::IsMember({"literal", "sign-decorated"}));

    std::string file, sdim, pj, ph;
    auto* check = app.add_subcommand("check", "verify one (J, h) pair");
    check->add_option("file", file)->required();
    auto* hyper = app.add_subcommand("check-hyper", "verify a quaternionic triple (J1, J2, J3, h)");
    hyper->add_option("file", file)->required();
    auto* cross = app.add_subcommand("cross-check", "compare d(omega) = 0 with nabla J = 0");
    cross->add_option("file", file)->required();
    auto* table = app.add_subcommand("table", "print the superdimension admissibility table");
    auto* search = app.add_subcommand("search", "standard model or randomized evidence for one cell");
    search->add_option("sdim", sdim, "superdimension n|m or n.m")->required();
    search->add_option("pJ", pj, "parity of J (ev|od)")->required();
    search->add_option("pH", ph, "parity of h (ev|od)")->required();
    auto* selftest = app.add_subcommand("oracle-selftest", "brute-force bracket against the kernel");

    // Subcommand options are accepted after the subcommand name too.
    for (auto* sub : {check, hyper, cross, table, search, selftest}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return e.get_exit_code() == 0 ? app.exit(e) : (app.exit(e), 2);
    }

    opt.omega = omega == "literal" ? OmegaVariant::literal : OmegaVariant::signDecorated;
    if (!signTable.empty()) {
        try {
            opt.signs = QuaternionSignTable::parse(signTable);
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }

    CommandResult r;
    if (*check) r = onFile(file, opt, commandCheck);
    else if (*hyper) r = onFile(file, opt, commandCheckHyper);
    else if (*cross) r = onFile(file, opt, commandCrossCheck);
    else if (*table) r = commandTable(app.count("--max-dim") ? opt.maxDim : 3);
    else if (*search) r = commandSearch(sdim, pj, ph, opt);
    else if (*selftest) {
        if (!app.count("--trials")) opt.trials = 500;
        r = commandOracleSelftest(opt);
    }

    std::cout << r.out;
    std::cerr << r.err;
    if (!reportPath.empty() && !r.report.empty()) {
        std::ofstream out(reportPath, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write report to '" << reportPath << "'\n";
            return 2;
        }
        out << r.report;
    }
    return r.exitCode;
}
