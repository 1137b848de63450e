#pragma once

#include <optional>
#include <string>
#include <vector>

namespace bundlecalc::cli {

struct RunResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

// Runs one command. `args` excludes the program name. `stdin_doc` is read
// when a document argument is given as "-".
RunResult run(const std::vector<std::string>& args, const std::optional<std::string>& stdin_doc = std::nullopt);

} // namespace bundlecalc::cli
