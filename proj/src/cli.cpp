#include "loopforms/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "loopforms/borel.hpp"
#include "loopforms/classify.hpp"
#include "loopforms/errors.hpp"
#include "loopforms/io.hpp"

namespace loopforms::cli {

using json = nlohmann::ordered_json;
using plumbing::ExceptionFlag;
using plumbing::SingularSetData;

namespace {

// Structured reports keep every integer as a decimal string so arbitrary
// precision survives the round trip.
json matrix_json(const detail::IntMatrix& m) {
  json entries = json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) entries.push_back(m.at(i, j).str());
  return json{{"n", std::to_string(m.rows())}, {"entries", std::move(entries)}};
}

json gl2_json(const gluing::Gl2Matrix& g) {
  return json{{"n", "2"},
              {"entries", {g.a().str(), g.b().str(), g.c().str(), g.d().str()}}};
}

const char* block_name(reduction::Block b) {
  switch (b) {
    case reduction::Block::PlusOne: return "plus-one";
    case reduction::Block::MinusOne: return "minus-one";
    case reduction::Block::Hyperbolic: return "hyperbolic";
  }
  return "?";
}

json certificate_json(const reduction::CongruenceCertificate& cert) {
  json blocks = json::array();
  for (auto b : cert.blocks) blocks.push_back(block_name(b));
  return json{{"source", matrix_json(cert.source.matrix())},
              {"base_change", matrix_json(cert.base_change.matrix())},
              {"blocks", std::move(blocks)},
              {"verified", cert.verify()}};
}

json input_json(const SingularSetData& data) {
  json spheres = json::array();
  for (const auto& s : data.spheres())
    spheres.push_back(json{{"euler", s.euler.str()}, {"sign", s.sign > 0 ? "+1" : "-1"}});
  json j{{"p", std::to_string(data.p())},
         {"orientation", data.orientation() > 0 ? "+1" : "-1"},
         {"spheres", std::move(spheres)}};
  if (data.exception() != ExceptionFlag::None)
    j["exception"] = io::exception_flag_name(data.exception());
  return j;
}

json validation_json(const plumbing::ValidationReport& r) {
  json cuts = json::array();
  for (const auto& c : r.cuts_tested)
    cuts.push_back(json{{"i", std::to_string(c.i + 1)},
                        {"j", std::to_string(c.j + 1)},
                        {"unimodular", c.unimodular}});
  json j{{"verdict", r.valid ? "valid" : "invalid"}};
  if (!r.valid) j["reason"] = r.reason;
  j["circular_rank"] = std::to_string(r.circular_rank);
  j["expected_rank"] = std::to_string(r.expected_rank);
  j["fixed_point_count"] = std::to_string(r.fixed_point_count);
  j["primitivity_note"] = r.primitivity_note;
  j["cuts"] = std::move(cuts);
  return j;
}

json rank_certificate_json(const borel::RankCertificate& cert) {
  json steps = json::array();
  for (const auto& s : cert.steps)
    steps.push_back(json{{"claim", s.claim}, {"check", s.check}, {"holds", s.holds}});
  return json{{"title", cert.title},
              {"steps", std::move(steps)},
              {"contradiction_flagged", cert.contradiction_flagged},
              {"verified", cert.verified()}};
}

json invariants_json(const forms::FormInvariants& inv) {
  return json{{"rank", std::to_string(inv.rank)},
              {"signature", std::to_string(inv.signature)},
              {"determinant", inv.determinant.str()},
              {"parity", inv.parity == forms::Parity::Even ? "even" : "odd"}};
}

void emit(const json& report, OutputFormat format, std::ostream& out);

void render_validation_human(const plumbing::ValidationReport& r, std::ostream& out) {
  out << "validation: " << (r.valid ? "valid" : ("INVALID - " + r.reason)) << "\n";
  out << "  circular rank " << r.circular_rank << " (expected " << r.expected_rank << ")"
      << ", fixed points " << r.fixed_point_count << "\n";
  out << "  " << r.primitivity_note << "\n";
  int unimodular = 0;
  for (const auto& c : r.cuts_tested)
    if (c.unimodular) ++unimodular;
  out << "  cuts tested: " << r.cuts_tested.size() << ", unimodular: " << unimodular << " (";
  bool first = true;
  for (const auto& c : r.cuts_tested) {
    if (!c.unimodular) continue;
    if (!first) out << ", ";
    out << "{" << c.i + 1 << "," << c.j + 1 << "}";
    first = false;
  }
  out << ")\n";
}

void render_certificate_human(const reduction::CongruenceCertificate& cert, std::ostream& out) {
  out << "certificate: blocks [";
  for (size_t k = 0; k < cert.blocks.size(); ++k)
    out << (k ? ", " : "") << block_name(cert.blocks[k]);
  out << "], verified: " << (cert.verify() ? "true" : "false") << "\n";
  out << "  source      " << cert.source.to_string() << "\n";
  out << "  base change " << cert.base_change.to_string() << "\n";
}

void render_rank_certificate_human(const borel::RankCertificate& cert, std::ostream& out) {
  out << cert.title << ":\n";
  for (const auto& s : cert.steps)
    out << "  [" << (s.holds ? "ok" : "FAIL") << "] " << s.claim << "  (" << s.check << ")\n";
  if (cert.contradiction_flagged) out << "  => contradiction flagged\n";
}

// --- command implementations -------------------------------------------------

int cmd_validate(const RunConfig& config, std::ostream& out) {
  SingularSetData data = io::parse_singular_data(io::read_file(config.input_path));
  auto report = plumbing::validate(data);
  if (config.format == OutputFormat::Structured) {
    json j{{"command", "validate"},
           {"input", input_json(data)},
           {"validation", validation_json(report)}};
    emit(j, config.format, out);
  } else {
    render_validation_human(report, out);
  }
  return report.valid ? 0 : 1;
}

int cmd_reduce(const RunConfig& config, std::ostream& out) {
  const std::string text = io::read_file(config.input_path);
  const std::string kind = io::sniff_document_kind(text);

  forms::SymmetricForm form = forms::SymmetricForm::diagonal({Int(1)});
  json j{{"command", "reduce"}};
  std::string method;
  std::optional<std::pair<int, int>> cut;

  if (kind == "form") {
    form = io::parse_form(text);
    j["input"] = matrix_json(form.matrix());
  } else {
    SingularSetData data = io::parse_singular_data(text);
    j["input"] = input_json(data);
    auto report = plumbing::validate(data);
    if (!report.valid) {
      if (config.format == OutputFormat::Structured) {
        j["validation"] = validation_json(report);
        emit(j, config.format, out);
      } else {
        render_validation_human(report, out);
      }
      return 1;
    }
    if (data.exception() != ExceptionFlag::None) {
      form = classify::exception_form(data);
    } else {
      auto cuts = classify::certified_cuts(data);
      if (cuts.empty()) throw NoUnimodularCut("valid data without a unimodular cut");
      form = forms::block_sum(cuts.front().chains);
      cut = {cuts.front().i, cuts.front().j};
    }
  }

  reduction::CongruenceCertificate cert = [&] {
    try {
      method = "reduce_chain";
      return reduction::reduce_chain(form);
    } catch (const NotChainShape&) {
      method = "brute_force_split";
      return reduction::brute_force_split_auto(form);
    }
  }();

  if (config.format == OutputFormat::Structured) {
    if (cut)
      j["cut"] = json{{"i", std::to_string(std::min(cut->first, cut->second) + 1)},
                      {"j", std::to_string(std::max(cut->first, cut->second) + 1)}};
    j["method"] = method;
    j["invariants"] = invariants_json(forms::invariants(form));
    j["certificate"] = certificate_json(cert);
    emit(j, config.format, out);
  } else {
    if (cut)
      out << "cut: {" << std::min(cut->first, cut->second) + 1 << ","
          << std::max(cut->first, cut->second) + 1 << "}\n";
    out << "method: " << method << "\n";
    render_certificate_human(cert, out);
  }
  return cert.verify() ? 0 : 1;
}

int cmd_gluing(const RunConfig& config, std::ostream& out) {
  SingularSetData data = io::parse_singular_data(io::read_file(config.input_path));
  bool calibrated = false;
  gluing::FactorOrder convention = gluing::FactorOrder::default_order();
  std::string calibration_note;
  if (config.convention) {
    convention = *config.convention;
    calibration_note = "user-specified convention; realizability is convention-dependent";
  } else {
    convention = gluing::calibrate_convention(gluing::standard_calibration_models());
    calibrated = true;
    calibration_note = "calibrated on the CP2-type triangle and S2xS2-type square models";
  }

  gluing::Gl2Matrix gamma = gluing::total_gluing(data, convention);
  gluing::CompatibilityVerdict verdict = gluing::compatibility(gamma, data.p());

  const char* reason = nullptr;
  switch (verdict.reason) {
    case gluing::IncompatibilityReason::None: break;
    case gluing::IncompatibilityReason::NotIdentityOddP: reason = "not-identity-odd-p"; break;
    case gluing::IncompatibilityReason::BaseFiberSplitViolation:
      reason = "base-fiber-split-violation";
      break;
    case gluing::IncompatibilityReason::MinusIdentityTorsionViolation:
      reason = "minus-identity-torsion-violation";
      break;
    case gluing::IncompatibilityReason::NotInNormalizer: reason = "not-in-normalizer"; break;
  }

  if (config.format == OutputFormat::Structured) {
    json j{{"command", "gluing"},
           {"input", input_json(data)},
           {"convention", gluing::format_convention(convention)},
           {"calibrated", calibrated},
           {"calibration_note", calibration_note},
           {"total_gluing", gl2_json(gamma)},
           {"determinant", gamma.determinant().str()},
           {"verdict", verdict.trivial_principal() ? "trivial-principal" : "incompatible"}};
    if (reason) j["reason"] = reason;
    emit(j, config.format, out);
  } else {
    out << "convention: " << gluing::format_convention(convention)
        << (calibrated ? " (calibrated)" : " (user-specified)") << "\n";
    out << "total gluing: " << gamma.to_string() << ", det " << gamma.determinant() << "\n";
    out << "verdict: "
        << (verdict.trivial_principal() ? "trivial principal torus bundle"
                                        : std::string("incompatible (") + reason + ")")
        << "\n";
  }
  return verdict.trivial_principal() ? 0 : 1;
}

int cmd_classify(const RunConfig& config, std::ostream& out) {
  SingularSetData data = io::parse_singular_data(io::read_file(config.input_path));
  auto report = plumbing::validate(data);

  json j{{"command", "classify"}, {"input", input_json(data)}};
  const bool structured = config.format == OutputFormat::Structured;
  std::ostringstream human;

  if (structured) j["validation"] = validation_json(report);
  else render_validation_human(report, human);

  if (!report.valid) {
    if (structured) emit(j, config.format, out);
    else out << human.str();
    return 1;
  }

  if (data.exception() != ExceptionFlag::None) {
    // Flagged exceptional actions: report the possible types, assert nothing.
    auto form = classify::exception_form(data);
    auto cert = reduction::reduce_chain(form);
    auto h = classify::homeo_type(cert, data);
    if (structured) {
      j["homeo_type"] = json{{"cp2", std::to_string(h.cp2_count)},
                             {"neg_cp2", std::to_string(h.neg_cp2_count)},
                             {"s2xs2", std::to_string(h.s2xs2_count)},
                             {"ks", h.ks_flag == classify::KsFlag::Zero ? "zero"
                                                                        : "possibly-chern"},
                             {"description", h.describe()}};
      j["exception_note"] = *h.exception_note;
      j["decomposition"] = nullptr;
      emit(j, config.format, out);
    } else {
      out << human.str();
      out << "exceptional input: " << *h.exception_note << "\n";
      out << "type: " << h.describe() << "\n";
      out << "KS: " << (h.ks_flag == classify::KsFlag::Zero ? "zero" : "possibly nonzero (Chern)")
          << "\n";
      out << "no equivariant decomposition is asserted\n";
    }
    return 0;
  }

  auto cuts = classify::certified_cuts(data);
  if (cuts.empty()) throw NoUnimodularCut("valid data without a unimodular cut");
  const auto& selected = cuts.front();
  auto full_cert = reduction::reduce_chain(forms::block_sum(selected.chains));
  auto h = classify::homeo_type(full_cert, data);
  auto decomposition = classify::equivariant_decomposition(data, cuts);

  bool calibrated = false;
  gluing::FactorOrder convention = gluing::FactorOrder::default_order();
  if (config.convention) {
    convention = *config.convention;
  } else {
    convention = gluing::calibrate_convention(gluing::standard_calibration_models());
    calibrated = true;
  }
  gluing::Gl2Matrix gamma = gluing::total_gluing(data, convention);
  gluing::CompatibilityVerdict verdict = gluing::compatibility(gamma, data.p());

  auto l_cert = borel::verify_L_vanishes(1);
  auto connected_cert = borel::check_table2_contradiction();

  if (structured) {
    j["cut"] = json{{"i", std::to_string(std::min(selected.i, selected.j) + 1)},
                    {"j", std::to_string(std::max(selected.i, selected.j) + 1)},
                    {"strategy", decomposition.strategy == classify::CutStrategy::AdjacentPair
                                     ? "adjacent-pair"
                                     : "two-step"}};
    j["certificate"] = certificate_json(full_cert);
    j["invariants"] = invariants_json(forms::invariants(full_cert.source));
    j["homeo_type"] = json{{"cp2", std::to_string(h.cp2_count)},
                           {"neg_cp2", std::to_string(h.neg_cp2_count)},
                           {"s2xs2", std::to_string(h.s2xs2_count)},
                           {"ks", h.ks_flag == classify::KsFlag::Zero ? "zero"
                                                                      : "possibly-chern"},
                           {"description", h.describe()}};
    json summands = json::array();
    for (auto s : decomposition.summands) summands.push_back(classify::summand_name(s));
    json notes = json::array();
    for (const auto& note : decomposition.notes) notes.push_back(note);
    j["equivariant"] = json{{"summands", std::move(summands)},
                            {"description", decomposition.describe()},
                            {"notes", std::move(notes)}};
    j["gluing"] = json{{"convention", gluing::format_convention(convention)},
                       {"calibrated", calibrated},
                       {"total_gluing", gl2_json(gamma)},
                       {"verdict", verdict.trivial_principal() ? "trivial-principal"
                                                               : "incompatible"}};
    j["borel"] = json{{"l_vanishes", rank_certificate_json(l_cert)},
                      {"connectedness", rank_certificate_json(connected_cert)},
                      {"freeness_generators",
                       std::to_string(borel::freeness_generator_count(data.sphere_count() - 2))}};
    emit(j, config.format, out);
  } else {
    out << human.str();
    out << "cut: {" << std::min(selected.i, selected.j) + 1 << ","
        << std::max(selected.i, selected.j) + 1 << "} ("
        << (decomposition.strategy == classify::CutStrategy::AdjacentPair ? "adjacent pair"
                                                                          : "two-step")
        << ")\n";
    render_certificate_human(full_cert, out);
    out << "homeomorphism type: " << h.describe() << "\n";
    out << "equivariant decomposition: " << decomposition.describe() << "\n";
    for (const auto& note : decomposition.notes) out << "  note: " << note << "\n";
    out << "gluing (" << gluing::format_convention(convention)
        << (calibrated ? ", calibrated" : ", user-specified") << "): " << gamma.to_string()
        << " -> "
        << (verdict.trivial_principal() ? "trivial principal torus bundle"
                                        : "incompatible")
        << "\n";
    render_rank_certificate_human(l_cert, out);
    render_rank_certificate_human(connected_cert, out);
  }
  return verdict.trivial_principal() ? 0 : 1;
}

int cmd_enumerate(const RunConfig& config, std::ostream& out) {
  long count = 0;
  plumbing::enumerate_singular_data(
      config.b2, config.euler_bound, config.p, [&](const SingularSetData& d) {
        ++count;
        if (config.format == OutputFormat::Structured) {
          out << input_json(d).dump() << "\n";
        } else {
          out << "e = (";
          for (int k = 0; k < d.sphere_count(); ++k)
            out << (k ? "," : "") << d.sphere(k).euler;
          out << "), signs = (";
          for (int k = 0; k < d.sphere_count(); ++k)
            out << (k ? "," : "") << (d.sphere(k).sign > 0 ? "+" : "-");
          out << ")\n";
        }
      });
  if (config.format == OutputFormat::Human)
    out << count << " configuration(s) at b2 = " << config.b2 << ", bound " << config.euler_bound
        << "\n";
  return 0;
}

int cmd_borel_check(const RunConfig& config, std::ostream& out) {
  std::vector<borel::RankCertificate> certs;
  for (long n = 1; n <= 3; ++n)
    for (long l = 0; l <= 2; ++l) certs.push_back(borel::reproduce_table1(n, l));
  certs.push_back(borel::reproduce_table2());

  bool l_sweep_ok = true;
  for (long n = 1; n <= 100; ++n)
    if (!borel::verify_L_vanishes(n).verified()) l_sweep_ok = false;
  certs.push_back(borel::verify_L_vanishes(1));
  certs.push_back(borel::check_table2_contradiction());

  bool all_ok = l_sweep_ok;
  for (const auto& c : certs)
    if (!c.verified()) all_ok = false;
  bool contradiction = certs.back().contradiction_flagged;

  if (config.format == OutputFormat::Structured) {
    json items = json::array();
    for (const auto& c : certs) items.push_back(rank_certificate_json(c));
    json j{{"command", "borel-check"},
           {"l_vanishes_sweep", json{{"range", "1..100"}, {"holds", l_sweep_ok}}},
           {"certificates", std::move(items)},
           {"all_checks_pass", all_ok && contradiction}};
    emit(j, config.format, out);
  } else {
    for (const auto& c : certs) render_rank_certificate_human(c, out);
    out << "L = 0 sweep over N = 1..100: " << (l_sweep_ok ? "ok" : "FAIL") << "\n";
    out << "all checks: " << (all_ok && contradiction ? "pass" : "FAIL") << "\n";
  }
  return all_ok && contradiction ? 0 : 1;
}

void emit(const json& report, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::Structured) out << report.dump(2) << "\n";
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.command) {
      case Command::Validate: return cmd_validate(config, out);
      case Command::Reduce: return cmd_reduce(config, out);
      case Command::Classify: return cmd_classify(config, out);
      case Command::Gluing: return cmd_gluing(config, out);
      case Command::Enumerate: return cmd_enumerate(config, out);
      case Command::BorelCheck: return cmd_borel_check(config, out);
    }
    err << "error: unknown command\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: malformed input document: " << e.what() << "\n";
    return 2;
  } catch (const NoConventionFound& e) {
    err << "error: " << e.what() << "\n" << e.transcript;
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int main_entry(int argc, const char* const* argv) {
  CLI::App app{"algebraic certificates for singular-set configurations of "
               "Z_p x Z_p actions on four-manifolds"};
  app.require_subcommand(1);

  RunConfig config;
  std::string convention_name;
  std::string format_name = "human";

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    if (needs_input)
      sub->add_option("--input", config.input_path, "input document path")->required();
    sub->add_option("--format", format_name, "output format: human|structured")
        ->check(CLI::IsMember({"human", "structured"}));
  };

  auto* validate = app.add_subcommand("validate", "check a singular-set configuration");
  add_common(validate, true);
  auto* reduce = app.add_subcommand("reduce", "split a chain form with a certificate");
  add_common(reduce, true);
  auto* classify_cmd = app.add_subcommand("classify", "full pipeline with report");
  add_common(classify_cmd, true);
  classify_cmd->add_option("--convention", convention_name, "gluing factor convention");
  auto* gluing_cmd = app.add_subcommand("gluing", "total gluing matrix and compatibility");
  add_common(gluing_cmd, true);
  gluing_cmd->add_option("--convention", convention_name, "gluing factor convention");
  auto* enumerate = app.add_subcommand("enumerate", "list valid configurations");
  add_common(enumerate, false);
  enumerate->add_option("--b2", config.b2, "second Betti number")->required();
  enumerate->add_option("--euler-bound", config.euler_bound, "max |e_i|");
  enumerate->add_option("--p", config.p, "prime p");
  auto* borel_check = app.add_subcommand("borel-check", "re-derive the rank arguments");
  add_common(borel_check, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      app.exit(e);
      return 0;
    }
    app.exit(e);
    return 2;
  }

  if (validate->parsed()) config.command = Command::Validate;
  else if (reduce->parsed()) config.command = Command::Reduce;
  else if (classify_cmd->parsed()) config.command = Command::Classify;
  else if (gluing_cmd->parsed()) config.command = Command::Gluing;
  else if (enumerate->parsed()) config.command = Command::Enumerate;
  else if (borel_check->parsed()) config.command = Command::BorelCheck;

  config.format = format_name == "structured" ? OutputFormat::Structured : OutputFormat::Human;
  if (!convention_name.empty()) {
    auto parsed = gluing::parse_convention(convention_name);
    if (!parsed) {
      std::fprintf(stderr, "error: unknown convention '%s'\n", convention_name.c_str());
      return 2;
    }
    config.convention = *parsed;
  }

  return run(config, std::cout, std::cerr);
}

}  // namespace loopforms::cli
