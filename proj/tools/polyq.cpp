// polyq: face lattices, torus kernel data, stratification and link data of
// convex polytopes in exact H-representation, with a sampling-based
// verification suite for the moment-map identities.

#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "polyq/verify.hpp"

namespace {

struct Options {
  std::string input;
  int samples = 1000;
  std::uint64_t seed = 42;
  std::vector<std::string> tol_overrides;
  std::string format = "json";
  std::string dot_target = "faces";
  double epsilon = 1.0;
};

polyq::Tolerances parse_tolerances(const std::vector<std::string>& overrides) {
  polyq::Tolerances t;
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw polyq::ValidationError("usage", "--tol expects name=value, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    double value = 0.0;
    try {
      value = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw polyq::ValidationError("usage", "--tol value is not a number: '" + item + "'");
    }
    if (!(value > 0))
      throw polyq::ValidationError("usage", "--tol values must be positive: '" + item + "'");
    if (name == "zero" || name == "zero_tol")
      t.zero_tol = value;
    else if (name == "level" || name == "level_tol")
      t.level_tol = value;
    else if (name == "rank" || name == "rank_tol")
      t.rank_tol = value;
    else if (name == "feas" || name == "feas_tol")
      t.feas_tol = value;
    else
      throw polyq::ValidationError("usage", "unknown tolerance '" + name + "'");
  }
  return t;
}

void emit_error(const std::string& code, const std::string& message) {
  polyq::json e;
  e["error"] = {{"code", code}, {"message", message}};
  std::cerr << e.dump() << "\n";
}

struct Instance {
  polyq::HPolytope p;
  polyq::TorusData t;
  polyq::FacePoset fp;
  polyq::Stratification st;
};

Instance load_instance(const Options& opt) {
  Instance inst;
  inst.p = polyq::load_polytope(polyq::read_json_file(opt.input));
  inst.t = polyq::build_torus_data(inst.p);
  inst.fp = polyq::enumerate_faces(inst.p);
  inst.st = polyq::build_stratification(inst.p, inst.fp);
  return inst;
}

int run_command(const std::string& command, const Options& opt) {
  const polyq::Tolerances tol = parse_tolerances(opt.tol_overrides);
  const Instance inst = load_instance(opt);
  const bool text = opt.format == "text";

  if (command == "analyze") {
    const auto report = polyq::analyze_report(inst.p, inst.t, inst.fp, inst.st);
    std::cout << (text ? polyq::analyze_text(report) : report.dump(2) + "\n");
    return 0;
  }
  if (command == "faces") {
    if (text)
      std::cout << polyq::faces_text(inst.fp);
    else
      std::cout << polyq::faces_report(inst.fp).dump(2) << "\n";
    return 0;
  }
  if (command == "strata") {
    if (text)
      std::cout << polyq::strata_text(inst.fp, inst.st);
    else
      std::cout << polyq::strata_report(inst.fp, inst.st).dump(2) << "\n";
    return 0;
  }
  if (command == "links") {
    if (text)
      std::cout << polyq::links_text(inst.p, inst.t, inst.fp);
    else
      std::cout << polyq::links_report(inst.p, inst.t, inst.fp).dump(2) << "\n";
    return 0;
  }
  if (command == "sample") {
    const auto md = polyq::make_moment_data(inst.p, inst.t, inst.fp, tol);
    const polyq::Sampler sampler(md, opt.seed);
    for (int i = 0; i < opt.samples; ++i)
      std::cout << polyq::sample_record_to_json(inst.fp, sampler.sample(i)).dump() << "\n";
    return 0;
  }
  if (command == "verify") {
    polyq::VerifyConfig cfg;
    cfg.samples = opt.samples;
    cfg.seed = opt.seed;
    cfg.tol = tol;
    cfg.epsilon = opt.epsilon;
    const auto results = polyq::run_verification(inst.p, inst.t, inst.fp, cfg);
    if (text)
      std::cout << polyq::verify_report_text(results);
    else
      std::cout << polyq::verify_report_json(results).dump(2) << "\n";
    return polyq::all_passed(results) ? 0 : 1;
  }
  if (command == "export") {
    if (opt.dot_target == "faces")
      std::cout << polyq::export_dot_faces(inst.fp);
    else
      std::cout << polyq::export_dot_pieces(inst.fp, inst.st);
    return 0;
  }
  throw polyq::ValidationError("usage", "unknown command '" + command + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete and symplectic data of convex polytopes in H-representation"};
  app.require_subcommand(1);

  Options opt;
  std::vector<CLI::App*> subs;
  for (const auto* name : {"analyze", "faces", "strata", "links", "sample", "verify", "export"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("input", opt.input, "input polytope document (JSON)")->required();
    sub->add_option("--samples", opt.samples, "number of samples")->capture_default_str();
    sub->add_option("--seed", opt.seed, "random seed")->capture_default_str();
    sub->add_option("--tol", opt.tol_overrides,
                    "tolerance override name=value (zero, level, rank, feas)");
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    sub->add_option("--dot", opt.dot_target, "poset to export")
        ->check(CLI::IsMember({"faces", "pieces"}))
        ->capture_default_str();
    sub->add_option("--epsilon", opt.epsilon, "link sphere radius")->capture_default_str();
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("usage", e.what());
    return 2;
  }

  try {
    return run_command(app.get_subcommands().front()->get_name(), opt);
  } catch (const polyq::ValidationError& e) {
    emit_error(e.code(), e.what());
    return 2;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return 2;
  }
}
