#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cli/commands.hpp"

namespace {

void add_run_options(CLI::App* cmd, zsum::cli::RunConfig& config) {
    cmd->add_option("--group", config.group, "group spec, e.g. 3x9 or 2,2,4")->required();
    cmd->add_option("--algorithm", config.algorithm, "bfs | direct | auto")
        ->check(CLI::IsMember({"bfs", "direct", "auto"}));
    cmd->add_option("--threads", config.threads, "worker threads (0 = hardware)");
    cmd->add_option("--memory", config.memory_bytes, "level-bitset memory cap in bytes");
    cmd->add_option("--format", config.format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--seed", config.seed, "seed for randomized modes");
    cmd->add_flag("--include-conjectures", config.include_conjectures,
                  "surface conjectural known values");
    cmd->add_flag("--normalize", config.normalize,
                  "fold non-chain factor lists into invariant factors");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Harborth constants, extremal sets and addition-theorem checks "
                 "for finite abelian groups"};
    app.require_subcommand(1);

    zsum::cli::RunConfig run_config;
    zsum::cli::VerifyConfig verify_config;
    zsum::cli::AddcheckConfig addcheck_config;
    zsum::cli::TableConfig table_config;

    CLI::App* harborth = app.add_subcommand("harborth", "compute g(G)");
    add_run_options(harborth, run_config);

    CLI::App* extremal = app.add_subcommand(
        "extremal", "compute g(G) and dump the extremal sets at level g(G)-1");
    add_run_options(extremal, run_config);
    extremal->add_option("--extremal-out", run_config.extremal_out,
                         "write the level dump to this file instead of stdout");

    CLI::App* verify = app.add_subcommand("verify", "build and verify a lower-bound construction");
    verify->add_option("selector", verify_config.selector, "composite | kiefer | c3c9")
        ->required();
    verify->add_option("--n", verify_config.kiefer_n, "n for the kiefer construction");
    verify->add_option("--g1", verify_config.composite_g1, "cyclic G1 for composite");
    verify->add_option("--g2", verify_config.composite_g2, "cyclic G2 for composite");
    verify->add_option("--format", verify_config.format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* addcheck = app.add_subcommand("addcheck", "run an addition-theorem oracle battery");
    addcheck->add_option("--p", addcheck_config.p, "prime modulus")->required();
    addcheck->add_option("--mode", addcheck_config.mode, "cd | dsh | vosper | ap")->required();
    addcheck->add_flag("--exhaustive", addcheck_config.exhaustive, "check every admissible input");
    addcheck->add_option("--samples", addcheck_config.samples, "random samples when not exhaustive");
    addcheck->add_option("--seed", addcheck_config.seed, "random seed");

    CLI::App* table = app.add_subcommand("table", "compare computed values against known ones");
    table->add_option("groups", table_config.groups, "group specs (default: built-in battery)");
    table->add_option("--algorithm", table_config.algorithm, "bfs | direct | auto")
        ->check(CLI::IsMember({"bfs", "direct", "auto"}));
    table->add_option("--threads", table_config.threads, "worker threads");
    table->add_option("--memory", table_config.memory_bytes, "memory cap in bytes");
    table->add_flag("--include-conjectures", table_config.include_conjectures,
                    "include conjectural rows");
    table->add_flag("--normalize", table_config.normalize, "normalize factor lists");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return zsum::cli::kExitUsage;
    }

    return zsum::cli::run_mapped(
        [&]() -> int {
            if (harborth->parsed()) return zsum::cli::cmd_harborth(run_config, std::cout, std::cerr);
            if (extremal->parsed()) return zsum::cli::cmd_extremal(run_config, std::cout, std::cerr);
            if (verify->parsed()) return zsum::cli::cmd_verify(verify_config, std::cout, std::cerr);
            if (addcheck->parsed()) {
                return zsum::cli::cmd_addcheck(addcheck_config, std::cout, std::cerr);
            }
            if (table->parsed()) return zsum::cli::cmd_table(table_config, std::cout, std::cerr);
            return zsum::cli::kExitUsage;
        },
        std::cerr);
}
