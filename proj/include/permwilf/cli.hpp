#ifndef PERMWILF_CLI_HPP
#define PERMWILF_CLI_HPP

#include <cmath>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "permwilf/cache.hpp"
#include "permwilf/constructions.hpp"
#include "permwilf/enumeration.hpp"
#include "permwilf/limits.hpp"
#include "permwilf/merging.hpp"
#include "permwilf/structure.hpp"
#include "permwilf/verify.hpp"

namespace permwilf::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kCeiling = 3 };

enum class Format { table, csv, json };

struct RunConfig {
  int ceiling_n = 12;
  int workers = default_workers();
  std::string cache_path;
  Format output_format = Format::table;
  bool force = false;
};

using Json = nlohmann::ordered_json;

/// At least 10 significant digits, never scientific notation.
inline std::string format_decimal(const Decimal& x) {
  int decimals = 10;
  if (x != 0) {
    const double mag = std::fabs(static_cast<double>(x));
    decimals = std::max(10, 9 - static_cast<int>(std::floor(std::log10(mag))));
  }
  std::ostringstream os;
  os << std::fixed << std::setprecision(decimals) << x;
  return os.str();
}

inline std::string format_decimal(double x) { return format_decimal(Decimal(x)); }

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline Json algebraic_json(const AlgebraicValue& v) {
  Json j;
  j["exact"] = v.to_string();
  j["decimal"] = format_decimal(v.to_decimal());
  return j;
}

inline Json bound_report_json(const BoundReport& r) {
  Json j;
  j["pattern"] = format_permutation(r.pattern);
  j["closed_form"] = r.closed_form ? algebraic_json(*r.closed_form) : Json(nullptr);
  Json fl;
  fl["best"] = format_decimal(r.finite_lower.best);
  fl["witness_n"] = r.finite_lower.witness_n;
  Json seq = Json::array();
  for (std::size_t i = 0; i < r.finite_lower.sequence.size(); ++i) {
    Json e;
    e["n"] = static_cast<int>(i) + 1;
    e["count"] = r.finite_lower.counts[i + 1].str();
    e["root"] = format_decimal(r.finite_lower.sequence[i]);
    seq.push_back(e);
  }
  fl["sequence"] = seq;
  j["finite_lower"] = fl;
  if (r.upper_chain) {
    Json uc = algebraic_json(r.upper_chain->value);
    uc["base"] = format_permutation(r.upper_chain->base);
    uc["base_constant"] = r.upper_chain->base_constant.to_string();
    uc["steps"] = r.upper_chain->steps;
    uc["trace"] = r.upper_chain->trace;
    j["upper_chain"] = uc;
  } else {
    j["upper_chain"] = nullptr;
  }
  if (r.prepend_lower) {
    Json pl = algebraic_json(r.prepend_lower->value);
    pl["reason"] = r.prepend_lower->reason;
    j["prepend_lower"] = pl;
  } else {
    j["prepend_lower"] = nullptr;
  }
  j["layered_lower"] = r.layered_lower ? Json(r.layered_lower->str()) : Json(nullptr);
  j["valtr_floor"] = format_decimal(r.valtr);
  j["consistent"] = r.consistent();
  return j;
}

inline Json verify_report_json(const VerifyReport& r) {
  Json j;
  j["suite"] = r.suite;
  j["max_n"] = r.max_n;
  j["passed"] = r.passed();
  j["checks"] = r.checks;
  Json fails = Json::array();
  for (const auto& f : r.failures) {
    Json e;
    e["pattern"] = f.pattern;
    e["n"] = f.n;
    e["relation"] = f.relation;
    e["lhs"] = f.lhs;
    e["rhs"] = f.rhs;
    fails.push_back(e);
  }
  j["failures"] = fails;
  j["notes"] = r.notes;
  return j;
}

inline std::vector<Permutation> parse_block_list(const std::string& text) {
  std::vector<Permutation> blocks;
  std::size_t start = 0;
  while (true) {
    const auto semi = text.find(';', start);
    blocks.push_back(parse_permutation(text.substr(start, semi == std::string::npos ? std::string::npos : semi - start)));
    if (blocks.back().empty()) throw ParseError("empty block in \"" + text + "\"");
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return blocks;
}

inline LayerComposition parse_layers(const std::string& text) {
  LayerComposition c;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size() || v < 1) throw std::invalid_argument(tok);
      c.lengths.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("invalid layer length '" + tok + "'");
    }
  }
  if (c.lengths.empty()) throw ParseError("no layers given");
  return c;
}

/// Runs the command line `args` (without the program name). Output goes to
/// `out`, diagnostics to `err`; the return value is the process exit code.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Permutation pattern avoidance: exact counts, constructions and growth-rate bounds", "permwilf"};
  app.fallthrough();
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format_text = "table";
  app.add_option("--cache", cfg.cache_path, "Count cache file (line-delimited JSON)");
  app.add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--ceiling", cfg.ceiling_n, "Largest n counted without --force")->check(CLI::PositiveNumber);
  app.add_option("--format", format_text, "Output format")->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_flag("--force", cfg.force, "Allow n above the ceiling");

  std::string pattern_text, pattern2_text, kind, suite, layers_text, blocks_text;
  int n = -1, max_n = -1, k = -1, block_size = -1;
  bool by_minima = false;

  auto* count = app.add_subcommand("count", "Count permutations of length n avoiding a pattern");
  count->add_option("--pattern", pattern_text)->required();
  count->add_option("--n", n)->required()->check(CLI::NonNegativeNumber);
  count->add_flag("--by-lr-minima", by_minima, "Refine by number of left-to-right minima");

  auto* avoiders_cmd = app.add_subcommand("avoiders", "List avoiders in lexicographic order");
  avoiders_cmd->add_option("--pattern", pattern_text)->required();
  avoiders_cmd->add_option("--n", n)->required()->check(CLI::NonNegativeNumber);

  auto* classify = app.add_subcommand("classify", "Structural properties of a pattern");
  classify->add_option("--pattern", pattern_text)->required();

  auto* wilf = app.add_subcommand("wilf", "Compare avoidance counts of two patterns up to max-n");
  wilf->add_option("--pattern", pattern_text)->required();
  wilf->add_option("--pattern2", pattern2_text)->required();
  wilf->add_option("--max-n", max_n)->required()->check(CLI::NonNegativeNumber);

  auto* verify = app.add_subcommand("verify", "Run an invariant suite");
  verify->add_option("suite", suite)->required()->check(CLI::IsMember(verify_suite_names()));
  verify->add_option("--max-n", max_n)->check(CLI::NonNegativeNumber);

  auto* limit = app.add_subcommand("limit", "Growth-rate bound report");
  limit->add_option("--pattern", pattern_text)->required();
  limit->add_option("--max-n", max_n)->check(CLI::PositiveNumber);

  auto* construct = app.add_subcommand("construct", "Build a pattern or witness permutation");
  construct->add_option("kind", kind)
      ->required()
      ->check(CLI::IsMember({"qprime", "sandwich", "qk", "layered", "block", "witness"}));
  construct->add_option("--pattern", pattern_text, "Input pattern (qprime, sandwich) or p' (witness)");
  construct->add_option("--k", k, "Length for qk");
  construct->add_option("--layers", layers_text, "Layer lengths, e.g. 3,4");
  construct->add_option("--blocks", blocks_text, "Blocks separated by ';', e.g. 21;12");
  construct->add_option("--block-size", block_size, "N for witness");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  cfg.output_format = format_text == "csv" ? Format::csv : (format_text == "json" ? Format::json : Format::table);

  try {
    std::unique_ptr<CountStore> store;
    if (!cfg.cache_path.empty())
      store = std::make_unique<JsonlCountCache>(cfg.cache_path, err);
    else
      store = std::make_unique<MemoryCountStore>();
    EngineConfig ecfg;
    ecfg.ceiling_n = cfg.ceiling_n;
    ecfg.workers = cfg.workers;
    ecfg.force = cfg.force;
    const Engine engine(ecfg, store.get());
    const Format fmt = cfg.output_format;

    if (count->parsed()) {
      const auto q = parse_permutation(pattern_text);
      if (q.empty()) throw ParseError("pattern must be nonempty");
      const auto qt = format_permutation(q);
      if (!by_minima) {
        const Count c = engine.count_avoiders(q, n);
        if (fmt == Format::json) {
          Json j;
          j["pattern"] = qt;
          j["n"] = n;
          j["count"] = c.str();
          out << j.dump() << "\n";
        } else if (fmt == Format::csv) {
          out << "pattern,n,count\n" << csv_field(qt) << "," << n << "," << c.str() << "\n";
        } else {
          out << c.str() << "\n";
        }
      } else {
        const auto d = engine.count_by_lr_minima(q, n);
        if (fmt == Format::json) {
          Json j;
          j["pattern"] = qt;
          j["n"] = n;
          Json per = Json::object();
          for (const auto& [m, c] : d.per_m) per[std::to_string(m)] = c.str();
          j["per_m"] = per;
          j["total"] = d.total().str();
          out << j.dump() << "\n";
        } else if (fmt == Format::csv) {
          out << "pattern,n,m,count\n";
          for (const auto& [m, c] : d.per_m) out << csv_field(qt) << "," << n << "," << m << "," << c.str() << "\n";
        } else {
          out << "m\tcount\n";
          for (const auto& [m, c] : d.per_m) out << m << "\t" << c.str() << "\n";
          out << "total\t" << d.total().str() << "\n";
        }
      }
      return kOk;
    }

    if (avoiders_cmd->parsed()) {
      const auto q = parse_permutation(pattern_text);
      if (q.empty()) throw ParseError("pattern must be nonempty");
      EngineConfig ec = ecfg;
      ec.enumeration_ceiling = std::min(8, cfg.ceiling_n);
      const Engine enumerator(ec);
      const auto list = enumerator.enumerate_avoiders(q, n);
      if (fmt == Format::json) {
        Json arr = Json::array();
        for (const auto& p : list) arr.push_back(format_permutation(p));
        out << arr.dump() << "\n";
      } else {
        if (fmt == Format::csv) out << "permutation\n";
        for (const auto& p : list) out << (fmt == Format::csv ? csv_field(format_permutation(p)) : format_permutation(p)) << "\n";
      }
      return kOk;
    }

    if (classify->parsed()) {
      const auto q = parse_permutation(pattern_text);
      if (q.empty()) throw ParseError("pattern must be nonempty");
      const auto dec = classify_decomposability(q);
      const auto layers = layers_of(q);
      const auto minima = left_to_right_minima(q);
      const auto rest = remaining_string(q);
      const auto closed = closed_form_limit(q);
      Json j;
      j["pattern"] = format_permutation(q);
      j["length"] = q.size();
      j["indecomposable"] = dec.indecomposable();
      j["cuts"] = dec.cuts;
      j["sum_indecomposable"] = is_sum_indecomposable(q);
      j["layers"] = layers ? Json(layers->lengths) : Json(nullptr);
      j["lr_minima_positions"] = minima.positions;
      j["lr_minima_values"] = minima.values;
      j["remaining_raw"] = rest.raw;
      j["remaining_flattened"] = format_permutation(rest.flattened);
      j["reverse_complement"] = format_permutation(reverse_complement(q));
      j["closed_form_limit"] = closed ? Json(closed->to_string()) : Json(nullptr);
      if (fmt == Format::json) {
        out << j.dump() << "\n";
      } else if (fmt == Format::csv) {
        out << "property,value\n";
        for (const auto& [key, val] : j.items())
          out << key << "," << csv_field(val.is_string() ? val.get<std::string>() : val.dump()) << "\n";
      } else {
        for (const auto& [key, val] : j.items())
          out << key << ": " << (val.is_string() ? val.get<std::string>() : val.dump()) << "\n";
      }
      return kOk;
    }

    if (wilf->parsed()) {
      const auto q1 = parse_permutation(pattern_text);
      const auto q2 = parse_permutation(pattern2_text);
      if (q1.empty() || q2.empty()) throw ParseError("patterns must be nonempty");
      const auto res = wilf_equivalent_upto(engine, q1, q2, max_n);
      Json j;
      j["pattern"] = format_permutation(q1);
      j["pattern2"] = format_permutation(q2);
      j["max_n"] = max_n;
      j["agree"] = res.agree;
      j["first_difference"] = res.agree ? Json(nullptr) : Json(res.first_difference);
      j["count"] = res.agree ? Json(nullptr) : Json(res.count_first.str());
      j["count2"] = res.agree ? Json(nullptr) : Json(res.count_second.str());
      if (fmt == Format::json) {
        out << j.dump() << "\n";
      } else if (fmt == Format::csv) {
        out << "pattern,pattern2,max_n,agree,first_difference,count,count2\n"
            << csv_field(format_permutation(q1)) << "," << csv_field(format_permutation(q2)) << "," << max_n
            << "," << (res.agree ? "true" : "false") << ","
            << (res.agree ? "" : std::to_string(res.first_difference)) << ","
            << (res.agree ? "" : res.count_first.str()) << "," << (res.agree ? "" : res.count_second.str()) << "\n";
      } else if (res.agree) {
        out << "agree for all n <= " << max_n << "\n";
      } else {
        out << "differ at n=" << res.first_difference << ": " << res.count_first.str() << " vs "
            << res.count_second.str() << "\n";
      }
      return kOk;
    }

    if (verify->parsed()) {
      const int effective = max_n >= 0 ? max_n : 7;
      const auto rep = run_verify_suite(suite, engine, effective);
      if (fmt == Format::json) {
        out << verify_report_json(rep).dump() << "\n";
      } else if (fmt == Format::csv) {
        out << "suite,pattern,n,relation,lhs,rhs\n";
        for (const auto& f : rep.failures)
          out << rep.suite << "," << csv_field(f.pattern) << "," << f.n << "," << csv_field(f.relation) << ","
              << csv_field(f.lhs) << "," << csv_field(f.rhs) << "\n";
      } else {
        out << "suite " << rep.suite << " (max-n " << rep.max_n << "): " << (rep.passed() ? "PASS" : "FAIL") << ", "
            << rep.checks << " checks\n";
        for (const auto& f : rep.failures)
          out << "  FAIL " << f.pattern << " n=" << f.n << " expected " << f.relation << ": " << f.lhs << " vs "
              << f.rhs << "\n";
        for (const auto& note : rep.notes) out << "  note: " << note << "\n";
      }
      return rep.passed() ? kOk : kVerificationFailed;
    }

    if (limit->parsed()) {
      const auto q = parse_permutation(pattern_text);
      if (q.empty()) throw ParseError("pattern must be nonempty");
      const int effective = max_n > 0 ? max_n : std::min(8, cfg.ceiling_n);
      const auto rep = bound_report(engine, q, effective);
      const Json j = bound_report_json(rep);
      if (fmt == Format::json) {
        out << j.dump() << "\n";
      } else if (fmt == Format::csv) {
        out << "pattern,closed_form,closed_form_decimal,finite_lower,witness_n,upper_chain,upper_chain_decimal,"
               "valtr_floor\n"
            << csv_field(format_permutation(q)) << ","
            << (rep.closed_form ? rep.closed_form->to_string() : "") << ","
            << (rep.closed_form ? format_decimal(rep.closed_form->to_decimal()) : "") << ","
            << format_decimal(rep.finite_lower.best) << "," << rep.finite_lower.witness_n << ","
            << (rep.upper_chain ? rep.upper_chain->value.to_string() : "") << ","
            << (rep.upper_chain ? format_decimal(rep.upper_chain->value.to_decimal()) : "") << ","
            << format_decimal(rep.valtr) << "\n";
      } else {
        out << "pattern: " << format_permutation(q) << "\n";
        if (rep.closed_form)
          out << "closed form: " << rep.closed_form->to_string() << " = " << format_decimal(rep.closed_form->to_decimal())
              << "\n";
        else
          out << "closed form: unknown\n";
        out << "finite lower bound: " << format_decimal(rep.finite_lower.best) << " (n=" << rep.finite_lower.witness_n
            << ")\n";
        if (rep.upper_chain) {
          out << "upper chain: " << rep.upper_chain->value.to_string() << " = "
              << format_decimal(rep.upper_chain->value.to_decimal()) << "\n";
          for (const auto& t : rep.upper_chain->trace) out << "  " << t << "\n";
        }
        if (rep.prepend_lower)
          out << "one-sided lower bound: " << rep.prepend_lower->value.to_string() << " = "
              << format_decimal(rep.prepend_lower->value.to_decimal()) << " (" << rep.prepend_lower->reason << ")\n";
        if (rep.layered_lower) out << "layered lower bound: " << rep.layered_lower->str() << "\n";
        out << "valtr floor: " << format_decimal(rep.valtr) << "\n";
      }
      return kOk;
    }

    if (construct->parsed()) {
      Permutation result;
      auto need = [&](bool ok, const char* what) {
        if (!ok) throw ArgumentError(std::string("construct ") + kind + ": missing " + what);
      };
      if (kind == "qprime" || kind == "sandwich") {
        need(construct->count("--pattern") > 0, "--pattern");
        const auto q = parse_permutation(pattern_text);
        result = kind == "qprime" ? prepend_one(q) : sandwich(q);
      } else if (kind == "qk") {
        need(construct->count("--k") > 0, "--k");
        result = qk_family(k);
      } else if (kind == "layered") {
        need(!layers_text.empty(), "--layers");
        result = layered_from_composition(parse_layers(layers_text));
      } else if (kind == "block") {
        need(!blocks_text.empty(), "--blocks");
        result = block_structured(BlockSpec{parse_block_list(blocks_text)});
      } else {
        need(construct->count("--pattern") > 0, "--pattern");
        need(block_size > 0, "--block-size");
        need(!blocks_text.empty(), "--blocks");
        result = build_witness(WitnessParams{parse_permutation(pattern_text), block_size,
                                             BlockSpec{parse_block_list(blocks_text)}});
      }
      const auto text = format_permutation(result);
      if (fmt == Format::json) {
        Json j;
        j["kind"] = kind;
        j["permutation"] = text;
        out << j.dump() << "\n";
      } else if (fmt == Format::csv) {
        out << "kind,permutation\n" << kind << "," << csv_field(text) << "\n";
      } else {
        out << text << "\n";
      }
      return kOk;
    }
  } catch (const CeilingExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kCeiling;
  } catch (const WitnessError& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailed;
  } catch (const std::invalid_argument& e) {
    // ParseError, ArgumentError, TripleError
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace permwilf::cli

#endif
