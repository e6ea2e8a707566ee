// Command-line driver: loads a JSON run configuration, executes one of the
// experiment runners and emits CSV tables plus a plain-text manifest. All
// output is deterministic for a fixed config in sequential mode.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical non-convergence,
// 4 self-test failure.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stripwave/config.hpp"
#include "stripwave/output.hpp"
#include "stripwave/runner.hpp"

namespace {

constexpr const char* TOOL_VERSION = "stripwave 1.0.0";

struct CommonArgs {
  std::string config_path;
  std::string out_dir;  // overrides outputs.dir when given
  int threads = 1;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* sub, CommonArgs& args) {
  sub->add_option("--config", args.config_path, "JSON configuration file")
      ->required();
  sub->add_option("--out", args.out_dir,
                  "output directory (overrides outputs.dir)");
  sub->add_option("--threads", args.threads,
                  "worker threads; 1 is the deterministic reference path")
      ->check(CLI::Range(1, 256));
  sub->add_option("--override", args.overrides,
                  "config override key.path=value, repeatable");
}

struct Emit {
  std::filesystem::path dir;
  std::string hash;
  std::vector<std::string> manifest;
  std::vector<std::string> files;

  Emit(const stripwave::config::RunConfig& cfg, const CommonArgs& args,
       const char* subcommand) {
    dir = args.out_dir.empty() ? cfg.out_dir : args.out_dir;
    std::filesystem::create_directories(dir);
    hash = stripwave::config::config_hash_hex(cfg.echo);
    manifest = {TOOL_VERSION,
                std::string("subcommand: ") + subcommand,
                "config_hash: " + hash,
                "threads: " + std::to_string(args.threads),
                "config: " + cfg.echo.dump()};
  }

  std::filesystem::path file(const std::string& name) {
    files.push_back(name);
    return dir / name;
  }

  void finish() {
    std::string list = "files:";
    for (const std::string& f : files) list += " " + f;
    manifest.push_back(list);
    stripwave::output::write_manifest(dir / "manifest.txt", manifest);
    std::printf("wrote %zu tables + manifest.txt to %s (config %s)\n",
                files.size(), dir.string().c_str(), hash.c_str());
  }
};

int cmd_fullwave(const CommonArgs& args) {
  const auto cfg = stripwave::config::load(args.config_path, args.overrides);
  const auto res = stripwave::runner::run_fullwave(cfg, args.threads);
  Emit emit(cfg, args, "fullwave");
  emit.manifest.push_back(res.contour.describe());
  emit.manifest.push_back("cond_worst: " +
                          stripwave::runner::detail::fmt("%.6e", res.cond_worst));
  stripwave::output::write_map_csv(emit.file("Kx.csv"), emit.hash, res.map,
                                   res.map.Kx);
  stripwave::output::write_map_csv(emit.file("Ky.csv"), emit.hash, res.map,
                                   res.map.Ky);
  stripwave::output::write_line_csv(emit.file("I.csv"), emit.hash, res.map.x,
                                    res.map.I);
  emit.finish();
  return 0;
}

int cmd_narrow_compare(const CommonArgs& args) {
  const auto cfg = stripwave::config::load(args.config_path, args.overrides);
  const auto res = stripwave::runner::run_narrow_compare(cfg, args.threads);
  Emit emit(cfg, args, "narrow-compare");
  emit.manifest.push_back(res.contour.describe());
  const char* axis_names[] = {"x", "y", "z"};
  for (int axis = 0; axis < 3; ++axis) {
    const std::string sfx = std::string("_") + axis_names[axis] + ".csv";
    stripwave::output::write_line_csv(emit.file("I_full" + sfx), emit.hash,
                                      res.x, res.I_gen[axis]);
    stripwave::output::write_line_csv(emit.file("I_narrow" + sfx), emit.hash,
                                      res.x, res.I_app[axis]);
    stripwave::output::write_real_csv(emit.file("d" + sfx), emit.hash, "d",
                                      res.x, res.d[axis]);
    emit.manifest.push_back(
        std::string("max_d_") + axis_names[axis] + ": " +
        stripwave::runner::detail::fmt("%.6e", res.max_d[axis]));
  }
  emit.finish();
  return 0;
}

int cmd_tem_compare(const CommonArgs& args) {
  const auto cfg = stripwave::config::load(args.config_path, args.overrides);
  const auto res = stripwave::runner::run_tem_compare(cfg, args.threads);
  Emit emit(cfg, args, "tem-compare");
  emit.manifest.push_back(res.contour.describe());
  emit.manifest.push_back(stripwave::runner::detail::fmt(
      "rms_window: strip=%.9e diff=%.9e", res.rms_strip, res.rms_diff));
  emit.manifest.push_back(
      stripwave::runner::detail::fmt("rms_ratio: %.6f", res.rms_ratio));
  stripwave::output::write_line_csv(emit.file("I_strip.csv"), emit.hash, res.x,
                                    res.I_strip);
  stripwave::output::write_line_csv(emit.file("I_tem.csv"), emit.hash, res.x,
                                    res.I_tem);
  stripwave::output::write_line_csv(emit.file("I_diff.csv"), emit.hash, res.x,
                                    res.I_diff);
  emit.finish();
  return 0;
}

int cmd_fields(const CommonArgs& args) {
  const auto cfg = stripwave::config::load(args.config_path, args.overrides);
  const auto res = stripwave::runner::run_fields(cfg, args.threads);
  Emit emit(cfg, args, "fields");
  emit.manifest.push_back(res.contour.describe());
  stripwave::output::write_fields_csv(emit.file("E.csv"), emit.hash,
                                      res.samples, true);
  stripwave::output::write_fields_csv(emit.file("H.csv"), emit.hash,
                                      res.samples, false);
  emit.finish();
  return 0;
}

int cmd_selftest(const std::string& out_dir) {
  const auto res = stripwave::runner::run_selftest();
  for (const std::string& l : res.lines) std::printf("%s\n", l.c_str());
  std::printf("selftest: %s\n", res.summary.c_str());
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::string> lines = res.lines;
    lines.push_back("selftest: " + res.summary);
    stripwave::output::write_manifest(
        std::filesystem::path(out_dir) / "selftest.txt", lines);
  }
  return res.pass ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Surface currents and fields excited by an electric dipole near a "
      "conducting strip above a ground plane"};
  app.set_version_flag("--version", TOOL_VERSION);
  app.require_subcommand(1);

  CommonArgs args;
  auto* fullwave = app.add_subcommand(
      "fullwave", "solve the full mode-matched system and emit current maps");
  add_common(fullwave, args);
  auto* narrow = app.add_subcommand(
      "narrow-compare",
      "full solver vs narrow-strip approximation for all dipole axes");
  add_common(narrow, args);
  auto* tem = app.add_subcommand(
      "tem-compare", "narrow-strip current vs analytic thin-wire TEM current");
  add_common(tem, args);
  auto* fields = app.add_subcommand(
      "fields", "evaluate E and H at configured probe points");
  add_common(fields, args);
  std::string selftest_out;
  auto* selftest = app.add_subcommand(
      "selftest", "run built-in numerical identity checks");
  selftest->add_option("--out", selftest_out,
                       "directory for the selftest report file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (fullwave->parsed()) return cmd_fullwave(args);
    if (narrow->parsed()) return cmd_narrow_compare(args);
    if (tem->parsed()) return cmd_tem_compare(args);
    if (fields->parsed()) return cmd_fields(args);
    return cmd_selftest(selftest_out);
  } catch (const stripwave::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const stripwave::ConvergenceError& e) {
    std::fprintf(stderr, "non-convergence: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
