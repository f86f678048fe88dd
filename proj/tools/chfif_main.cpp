#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "chfif/commands.hpp"
#include "chfif/config.hpp"

namespace {

struct Overrides {
  std::optional<int> depth;
  std::optional<double> tol;
  std::optional<int> eps_min_exp;
  std::optional<int> eps_max_exp;
  std::optional<std::uint64_t> seed;
  std::optional<int> precision;
  std::optional<std::string> method;
  std::optional<int> max_iters;
  std::optional<std::size_t> grid_size;
  std::optional<int> moment_depth;
  std::optional<int> m_max;
  std::optional<int> probe_depth;
  std::optional<std::size_t> chaos_points;
};

template <class T>
void apply(const std::optional<T>& from, T& to) {
  if (from) to = *from;
}

void apply_overrides(const Overrides& ov, chfif::RunOptions& o) {
  apply(ov.depth, o.depth);
  apply(ov.tol, o.tol);
  apply(ov.eps_min_exp, o.eps_min_exp);
  apply(ov.eps_max_exp, o.eps_max_exp);
  apply(ov.seed, o.seed);
  apply(ov.precision, o.precision);
  apply(ov.method, o.method);
  apply(ov.max_iters, o.max_iters);
  apply(ov.grid_size, o.grid_size);
  apply(ov.moment_depth, o.moment_depth);
  apply(ov.m_max, o.m_max);
  apply(ov.probe_depth, o.probe_depth);
  apply(ov.chaos_points, o.chaos_points);
}

bool write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return static_cast<bool>(std::cout.flush());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out << text;
  out.close();
  return !out.fail();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coalescence hidden-variable fractal interpolation toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path = "-";
  Overrides ov;

  for (const auto& name : chfif::command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "config file, or a bundled name such as fig4")
        ->required();
    sub->add_option("--out", out_path, "output path, '-' for stdout");
    sub->add_option("--depth", ov.depth, "address depth for generate")
        ->check(CLI::Range(0, 40));
    sub->add_option("--tol", ov.tol, "fixed-point tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--eps-min-exp", ov.eps_min_exp, "coarsest box size 2^-k")
        ->check(CLI::Range(0, 60));
    sub->add_option("--eps-max-exp", ov.eps_max_exp, "finest box size 2^-k")
        ->check(CLI::Range(0, 60));
    sub->add_option("--seed", ov.seed, "chaos-game seed");
    sub->add_option("--precision", ov.precision, "significant digits")->check(CLI::Range(1, 17));
    sub->add_option("--method", ov.method, "curve method")
        ->check(CLI::IsMember({"exact", "iterate", "chaos"}));
    sub->add_option("--max-iters", ov.max_iters)->check(CLI::PositiveNumber);
    sub->add_option("--grid-size", ov.grid_size)->check(CLI::Range(2, 1 << 26));
    sub->add_option("--moment-depth", ov.moment_depth)->check(CLI::Range(0, 20));
    sub->add_option("--m-max", ov.m_max)->check(CLI::Range(1, 30));
    sub->add_option("--probe-depth", ov.probe_depth)->check(CLI::Range(1, 40));
    sub->add_option("--chaos-points", ov.chaos_points)->check(CLI::PositiveNumber);
  }

  auto* dump = app.add_subcommand("dump-config", "write a bundled config as JSON");
  std::string dump_name;
  dump->add_option("name", dump_name)->required();
  dump->add_option("--out", out_path);

  auto* list = app.add_subcommand("list-configs", "print the bundled config names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : chfif::kExitValidation;
  }

  if (list->parsed()) {
    for (const auto& n : chfif::bundled_names()) std::cout << n << '\n';
    return chfif::kExitOk;
  }
  if (dump->parsed()) {
    const auto cfg = chfif::bundled_config(dump_name);
    if (!cfg) {
      std::cerr << "error: no bundled config named '" << dump_name << "'\n";
      return chfif::kExitValidation;
    }
    if (!write_output(out_path, chfif::serialize_config(*cfg))) {
      std::cerr << "error: cannot write " << out_path << '\n';
      return chfif::kExitIo;
    }
    return chfif::kExitOk;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  chfif::RunConfig config;
  try {
    config = chfif::load_config(config_path);
  } catch (const chfif::ConfigError& e) {
    std::cerr << "error: " << config_path << ": " << e.what() << '\n';
    return chfif::kExitValidation;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return chfif::kExitIo;
  }
  apply_overrides(ov, config.options);
  if (config.options.eps_min_exp > config.options.eps_max_exp) {
    std::cerr << "error: eps-min-exp must not exceed eps-max-exp\n";
    return chfif::kExitValidation;
  }

  const auto result = chfif::run_command(command, config);
  for (const auto& line : result.diagnostics) std::cerr << command << ": " << line << '\n';
  if (!result.output.empty() && !write_output(out_path, result.output)) {
    std::cerr << "error: cannot write " << out_path << '\n';
    return chfif::kExitIo;
  }
  return result.exit_code;
}
