#pragma once

// Command-line front end: analyze, family, scan, pell.

#include "k3lat/report.hpp"

#include "CLI11.hpp"

#include <atomic>
#include <exception>
#include <ostream>
#include <regex>
#include <string>
#include <thread>
#include <vector>

namespace k3lat::cli {

inline Integer parse_integer(const std::string& text, const std::string& what) {
  static const std::regex kInteger(R"(\s*[-+]?[0-9]+\s*)");
  if (!std::regex_match(text, kInteger)) throw CLI::ValidationError(what, "not an integer: '" + text + "'");
  std::string t = text;
  t.erase(0, t.find_first_not_of(" \t"));
  t.erase(t.find_last_not_of(" \t") + 1);
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  return Integer(t);
}

inline Matrix2 parse_gram(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    parts.push_back(text.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 4) {
    throw CLI::ValidationError("--gram", "expected four comma-separated integers A,B,C,D");
  }
  return {parse_integer(parts[0], "--gram"), parse_integer(parts[1], "--gram"),
          parse_integer(parts[2], "--gram"), parse_integer(parts[3], "--gram")};
}

inline std::vector<report::ScanRow> scan(const Integer& from, const Integer& to, unsigned jobs) {
  if (from < 2 || to < from) throw HypothesisError("scan needs 2 <= from <= to");
  const std::size_t count = static_cast<std::size_t>(to - from) + 1;
  std::vector<std::optional<report::ScanRow>> rows(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        rows[i] = report::scan_row(from + Integer(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<report::ScanRow> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*rows[i]));
  }
  return out;
}

/// The command echo leaves out --jobs, which never changes a report.
inline std::vector<std::string> echo_of(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--jobs") {
      ++i;
      continue;
    }
    if (args[i].rfind("--jobs=", 0) == 0) continue;
    out.push_back(args[i]);
  }
  return out;
}

/// Runs one invocation; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"k3lat: automorphisms of rank-2 K3 Picard lattices"};
  app.require_subcommand(1);

  std::string format = "json";
  const std::vector<std::string> formats{"json", "text"};

  auto* analyze = app.add_subcommand("analyze", "classify Aut and apply the Cremona criteria");
  std::string gram, mode = "exact";
  analyze->add_option("--gram", gram, "row-major A,B,C,D")->required();
  analyze->add_option("--format", format)->check(CLI::IsMember(formats));
  analyze->add_option("--mode", mode)->check(CLI::IsMember({"paper-criterion", "exact"}));

  auto* family = app.add_subcommand("family", "verify every identity for Q_n");
  std::string n_text;
  family->add_option("--n", n_text)->required();
  family->add_option("--format", format)->check(CLI::IsMember(formats));

  auto* scan_cmd = app.add_subcommand("scan", "survey the family over a range of n");
  std::string from_text, to_text;
  unsigned jobs = 1;
  scan_cmd->add_option("--from", from_text)->required();
  scan_cmd->add_option("--to", to_text)->required();
  scan_cmd->add_option("--jobs", jobs)->check(CLI::Range(1u, 1024u));
  scan_cmd->add_option("--format", format)->check(CLI::IsMember(formats));

  auto* pell_cmd = app.add_subcommand("pell", "decide x^2 - r y^2 = N");
  std::string r_text, rhs_text;
  pell_cmd->add_option("--r", r_text)->required();
  pell_cmd->add_option("--rhs", rhs_text)->required();
  pell_cmd->add_option("--format", format)->check(CLI::IsMember(formats));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  const bool text = format == "text";
  const std::vector<std::string> echo = echo_of(args);
  auto emit = [&](const report::Json& j) { out << j.dump(2) << "\n"; };

  try {
    if (analyze->parsed()) {
      const GramMatrix g = admit(parse_gram(gram));
      const auto m = mode == "exact" ? RepresentMode::exact : RepresentMode::paper_criterion;
      const report::Analysis a = report::analyze(g, m);
      if (text) {
        out << report::analysis_text(a);
      } else {
        emit(report::analysis_json(a, echo));
      }
      return report::exit_code(a);
    }
    if (family->parsed()) {
      const Integer n = parse_integer(n_text, "--n");
      const FamilyVerification f = verify_main_theorem(n);
      if (text) {
        out << report::family_text(f);
      } else {
        emit(report::family_json(f, echo));
      }
      return report::exit_code(f);
    }
    if (scan_cmd->parsed()) {
      const auto rows = scan(parse_integer(from_text, "--from"), parse_integer(to_text, "--to"), jobs);
      if (text) {
        out << report::scan_text(rows);
      } else {
        emit(report::scan_json(rows, echo));
      }
      return 0;
    }
    if (pell_cmd->parsed()) {
      const Integer r = parse_integer(r_text, "--r");
      const Integer rhs = parse_integer(rhs_text, "--rhs");
      if (r <= 0 || pell::is_perfect_square(r)) throw HypothesisError("--r must be a positive non-square");
      if (rhs == 0) throw HypothesisError("--rhs must be nonzero");
      const pell::Decision d = pell::solvable(r, rhs);
      if (text) {
        out << report::pell_text(r, rhs, d);
      } else {
        emit(report::pell_json(r, rhs, d, echo));
      }
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const InvariantFailure& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace k3lat::cli
