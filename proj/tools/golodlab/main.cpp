#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "app.hpp"
#include "golodlab/error.hpp"

namespace fs = std::filesystem;
using golodlab::app::json;

namespace {

struct Outcome {
  std::string output;
  std::string error;
  int code = 0;
  json report;
};

Outcome run_file(const fs::path& path, const golodlab::app::RunOptions& opt, bool text) {
  Outcome out;
  try {
    std::ifstream in(path);
    if (!in) throw golodlab::InputError("--input: cannot open '" + path.string() + "'");
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw golodlab::InputError("--input: not valid json: " + std::string(e.what()));
    }
    auto spec = golodlab::app::parse_spec(doc);
    auto start = std::chrono::steady_clock::now();
    auto res = golodlab::app::run(spec, opt);
    if (opt.timing) {
      auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      res.report["meta"]["elapsed_ms"] = static_cast<std::int64_t>(ms + 0.5);
    }
    out.code = res.exit_code;
    out.report = res.report;
    out.output = text ? golodlab::app::emit_text(res.report) : res.report.dump(2) + "\n";
    if (res.exit_code == 4) out.error = "internal: a theorem check was violated; see the report";
  } catch (const std::exception& e) {
    out.code = golodlab::app::exit_code_for(e);
    out.error = (out.code == 4 ? "internal error: " : out.code == 3 ? "cap exceeded: " : "error: ") + std::string(e.what());
    if (out.code == 4) out.error += "\n  while running '" + path.string() + "'";
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Golod rings and modules: Betti numbers, Koszul homology, Massey products and verdicts"};
  std::string command, input, format = "json", field;
  int max_h = -1, max_d = -1, jobs = 1;
  bool timing = false;
  cli.add_option("command", command, "Command to run")
      ->required()
      ->check(CLI::IsMember(golodlab::app::command_names()));
  cli.add_option("--input", input, "Spec file, or a directory of spec files")->required();
  cli.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  cli.add_option("--max-h", max_h, "Override the homological cap");
  cli.add_option("--max-d", max_d, "Override the internal-degree cap");
  cli.add_option("--field", field, "Override the field (q or p:PRIME)");
  cli.add_option("--jobs", jobs, "Parallel jobs when --input is a directory")->check(CLI::PositiveNumber);
  cli.add_flag("--timing", timing, "Record elapsed_ms in the report");
  try {
    cli.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return cli.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.exit(e);
    return 2;
  }

  golodlab::app::RunOptions opt;
  opt.command = command;
  if (max_h >= 0) opt.max_h = max_h;
  if (max_d >= 0) opt.max_d = max_d;
  if (!field.empty()) opt.field = field;
  opt.timing = timing;
  const bool text = format == "text";

  if (!fs::is_directory(input)) {
    auto o = run_file(input, opt, text);
    std::cout << o.output;
    if (!o.error.empty()) std::cerr << o.error << "\n";
    return o.code;
  }

  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(input)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Outcome> outcomes(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) outcomes[i] = run_file(files[i], opt, text);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::min<int>(jobs, static_cast<int>(files.size())); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int code = 0;
  json all = json::object();
  for (std::size_t i = 0; i < files.size(); ++i) {
    const auto& o = outcomes[i];
    code = std::max(code, o.code);
    const std::string name = files[i].filename().string();
    if (!o.error.empty()) std::cerr << name << ": " << o.error << "\n";
    if (text) {
      std::cout << "== " << name << " ==\n" << o.output;
      if (o.output.empty()) std::cout << o.error << "\n";
    } else {
      all[name] = o.report.is_null() ? json{{"error", o.error}, {"exit_code", o.code}} : o.report;
    }
  }
  if (!text) std::cout << all.dump(2) << "\n";
  return code;
}
