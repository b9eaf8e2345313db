// Acceptance gate: one PASS/FAIL line per criterion, exit 0 only when all pass.
#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "scv/cli.hpp"

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kSeed = 7;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Captured {
  int status = -1;
  std::string out;
};

std::optional<Captured> capture(const std::string& command) {
  std::FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return std::nullopt;
  Captured c;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), n);
  c.status = pclose(pipe);
  return c;
}

// Per-criterion time limits in seconds; 0 means no separate limit.
double time_limit(int id) {
  switch (id) {
    case 1: return 1.0;
    case 4: return 90.0;  // three domains, < 30 s each
    default: return 0.0;
  }
}

}  // namespace

int main() {
  bool all = true;
  for (const auto& c : scv::cli::suite_criteria()) {
    const auto t0 = Clock::now();
    std::string detail;
    bool passed = true;
    std::size_t n_rows = 0;
    try {
      const auto rows = c.run(kSeed);
      n_rows = rows.size();
      for (const auto& r : rows) {
        if (!r.passed) {
          passed = false;
          if (detail.empty()) {
            std::ostringstream s;
            s.precision(10);
            s << r.check << ": measured " << r.measured << ", expected " << r.expected << ", tolerance " << r.tolerance;
            detail = s.str();
          }
        }
      }
      if (rows.empty()) {
        passed = false;
        detail = "no checks ran";
      }
    } catch (const std::exception& e) {
      passed = false;
      detail = std::string("threw: ") + e.what();
    }
    const double dt = seconds_since(t0);
    const double limit = time_limit(c.id);
    if (limit > 0.0 && dt >= limit) {
      passed = false;
      if (detail.empty()) detail = "runtime over " + std::to_string(limit) + " s";
    }
    all = all && passed;
    std::printf("%s criterion %2d  %-44s %4zu checks  %7.2f s%s%s\n", passed ? "PASS" : "FAIL", c.id, c.name.c_str(),
                n_rows, dt, detail.empty() ? "" : "  ", detail.c_str());
    std::fflush(stdout);
  }

  // Determinism: two processes, different worker counts, same seed.
  {
    const std::string exe = SCV_EXECUTABLE;
    const std::string args = " suite --seed " + std::to_string(kSeed);
    const auto t0 = Clock::now();
    const auto one = capture("SCV_WORKERS=1 '" + exe + "'" + args);
    const double first = seconds_since(t0);
    const auto four = capture("SCV_WORKERS=4 '" + exe + "'" + args);
    std::string detail;
    bool passed = one && four;
    if (!passed) {
      detail = "could not launch " + exe;
    } else if (one->status != 0 || four->status != 0) {
      passed = false;
      detail = "suite exit status " + std::to_string(one->status) + "/" + std::to_string(four->status);
    } else if (one->out != four->out) {
      passed = false;
      detail = "outputs differ";
    } else if (one->out.empty()) {
      passed = false;
      detail = "empty output";
    } else if (first >= 300.0) {
      passed = false;
      detail = "suite took " + std::to_string(first) + " s";
    }
    all = all && passed;
    std::printf("%s criterion 12  %-44s %4zu bytes   %7.2f s per run%s%s\n", passed ? "PASS" : "FAIL",
                "deterministic suite output", one ? one->out.size() : 0, first, detail.empty() ? "" : "  ",
                detail.c_str());
  }
  std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return all ? 0 : 1;
}
