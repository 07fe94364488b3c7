#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace zsum::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;     // parse / usage errors
inline constexpr int kExitResource = 3;  // memory or size caps
inline constexpr int kExitDomain = 4;    // violated mathematical preconditions
inline constexpr int kExitMismatch = 5;  // expected-value regression

struct RunConfig {
    std::string group;
    std::string algorithm = "auto";  // bfs | direct | auto (direct for |G| <= 18)
    int threads = 0;                 // 0 = hardware concurrency
    std::uint64_t memory_bytes = 4ull << 30;
    std::string format = "text";  // text | json
    std::optional<std::string> extremal_out;
    bool include_conjectures = false;
    bool normalize = false;
    std::uint64_t seed = 1;
};

struct VerifyConfig {
    std::string selector;  // composite | kiefer | c3c9
    int kiefer_n = 5;
    std::string composite_g1 = "6";
    std::string composite_g2 = "3";
    std::string format = "text";
};

struct AddcheckConfig {
    int p = 5;
    std::string mode;  // cd | dsh | vosper | ap
    bool exhaustive = false;
    std::uint64_t samples = 10000;
    std::uint64_t seed = 1;
};

struct TableConfig {
    std::vector<std::string> groups;  // empty = built-in battery
    std::string algorithm = "auto";
    int threads = 0;
    std::uint64_t memory_bytes = 4ull << 30;
    bool include_conjectures = false;
    bool normalize = false;
};

int cmd_harborth(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyConfig& config, std::ostream& out, std::ostream& err);
int cmd_extremal(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_addcheck(const AddcheckConfig& config, std::ostream& out, std::ostream& err);
int cmd_table(const TableConfig& config, std::ostream& out, std::ostream& err);

/// Runs fn() and maps the library error taxonomy onto exit codes, printing
/// the diagnostic on err.
int run_mapped(const std::function<int()>& fn, std::ostream& err);

}  // namespace zsum::cli
