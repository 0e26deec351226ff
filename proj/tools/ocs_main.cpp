#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ocs/catalog.hpp"
#include "ocs/http_api.hpp"
#include "ocs/name_index.hpp"
#include "ocs/session.hpp"
#include "ocs/simulator.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ocs::Error(ocs::ErrorCode::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path data_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("OCS_DATA_DIR"); env && *env) return env;
  return OCS_DEFAULT_DATA_DIR;
}

ocs::MethodDoc read_method(const std::string& path, const ocs::Taxonomy& t) {
  try {
    return ocs::parse_method(read_file(path), t);
  } catch (const ocs::Error& e) {
    throw ocs::Error(e.code(), fs::path(path).filename().string() + ": " + e.what());
  }
}

ocs::HttpApi* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Card trick method transcription tools"};
  app.require_subcommand(1);
  std::string data;
  app.add_option("--data", data, "Catalog directory (default: $OCS_DATA_DIR or the shipped seed data)");

  auto* validate = app.add_subcommand("validate", "Check a catalog directory and report violations");
  std::string validate_dir;
  validate->add_option("dir", validate_dir, "Directory to check (default: the catalog directory)");

  auto* run = app.add_subcommand("run", "Simulate a method file");
  std::string run_file;
  bool show_trace = false, check_expect = false;
  run->add_option("method-file", run_file)->required();
  run->add_flag("--trace", show_trace, "Print every state");
  run->add_flag("--expect", check_expect, "Check the file's expect line against the final state");

  auto* exp = app.add_subcommand("export", "Print the triple export of a method file");
  std::string export_file;
  exp->add_option("method-file", export_file)->required();

  auto* query = app.add_subcommand("query", "List catalog methods matching all filters");
  std::optional<std::size_t> max_cards, max_sleights;
  std::string uses;
  bool query_public = false;
  query->add_option("--max-cards", max_cards);
  query->add_option("--max-sleights", max_sleights);
  query->add_option("--uses", uses, "Action class id; descendants count");
  query->add_flag("--public", query_public, "Leave out private methods");

  auto* complete = app.add_subcommand("complete", "Autocomplete an action name");
  std::string prefix;
  bool complete_public = false;
  complete->add_option("query", prefix)->required();
  complete->add_flag("--public", complete_public, "Leave out private classes");

  auto* stats = app.add_subcommand("stats", "Print corpus statistics");

  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  int port = 8080;
  std::string host = "127.0.0.1", snapshot;
  bool serve_public = false;
  serve->add_option("--port", port);
  serve->add_option("--host", host);
  serve->add_option("--sessions", snapshot, "Session snapshot file, reloaded on start");
  serve->add_flag("--public", serve_public, "Hide private methods and classes");

  CLI11_PARSE(app, argc, argv);

  try {
    const auto dir = data_dir(data);
    if (*validate) {
      auto corpus = ocs::load_corpus(validate_dir.empty() ? dir : fs::path(validate_dir));
      auto report = ocs::validate_corpus(corpus);
      for (const auto& v : report.violations) std::cout << ocs::format_violation(v) << "\n";
      std::cerr << corpus.taxonomy.classes().size() << " classes, " << corpus.methods.size() << " methods: "
                << (report.consistent ? "consistent" : "inconsistent") << ", "
                << (report.coherent ? "coherent" : "not coherent") << "\n";
      return report.consistent ? 0 : 1;
    }
    if (*run) {
      auto tax = ocs::load_corpus(dir).taxonomy;
      auto doc = read_method(run_file, tax);
      auto r = ocs::run(tax, doc);
      if (show_trace) {
        std::cout << ocs::dump_trace(r.trace);
      } else {
        std::cout << r.trace.steps() << ": " << ocs::format_state(r.trace.final_state()) << "\n";
      }
      if (!r.ok()) {
        std::cerr << "step " << r.error->step_index << ": " << r.error->detail << "\n";
        return 2;
      }
      if (check_expect) {
        if (!doc.expect) {
          std::cerr << run_file << " has no expect line\n";
          return 2;
        }
        auto report = ocs::check_effect(r.trace, *doc.expect);
        for (const auto& m : report.mismatches) {
          std::cout << "MISMATCH " << m.card.code() << ": expected " << ocs::to_string(m.expected) << ", got "
                    << ocs::to_string(m.actual) << "\n";
        }
        std::cout << (report.holds ? "EFFECT HOLDS" : "EFFECT FAILS") << "\n";
        return report.holds ? 0 : 1;
      }
      return 0;
    }
    if (*exp) {
      auto tax = ocs::load_corpus(dir).taxonomy;
      std::cout << ocs::export_triples(read_method(export_file, tax), tax);
      return 0;
    }
    if (*query) {
      auto cat = ocs::load_catalog(dir, {query_public});
      ocs::MethodQuery q{max_cards, max_sleights, std::nullopt};
      if (!uses.empty()) q.uses_action = uses;
      for (const auto& id : ocs::query_methods(cat, q)) std::cout << id << "\n";
      return 0;
    }
    if (*complete) {
      auto idx = ocs::build_index(ocs::load_corpus(dir).taxonomy, complete_public);
      auto done = idx.autocomplete(prefix);
      for (const auto& c : done.candidates) {
        std::cout << c.label;
        if (c.alt) {
          std::cout << "\tALT";
          for (const auto& id : c.class_ids) std::cout << " " << id;
        }
        std::cout << "\n";
      }
      if (done.overflow) std::cout << "...\n";
      return 0;
    }
    if (*stats) {
      auto corpus = ocs::load_corpus(dir);
      const auto& t = corpus.taxonomy;
      std::size_t actions = 0, sleights = 0, max_depth = 0;
      for (const auto& [id, c] : t.classes()) {
        if (!t.is_card_action(id)) continue;
        ++actions;
        if (c.kind == ocs::ActionKind::Sleight) ++sleights;
        max_depth = std::max(max_depth, ocs::depth(t, id));
      }
      auto idx = ocs::build_index(t);
      std::size_t worst_keys = 0, worst_clicks = 0;
      for (const auto& [id, c] : t.classes()) {
        auto g = idx.gesture_distance(id);
        worst_keys = std::max(worst_keys, g.keystrokes);
        worst_clicks = std::max(worst_clicks, g.clicks);
      }
      std::cout << "classes " << t.classes().size() << "\n"
                << "card actions " << actions << "\n"
                << "sleight classes " << sleights << "\n"
                << "variants " << t.variants().size() << "\n"
                << "methods " << corpus.methods.size() << "\n"
                << "individuals " << corpus.individuals.individuals.size() << "\n"
                << "max depth " << max_depth << "\n"
                << "substring violations " << idx.check_substring_free().size() << "\n"
                << "worst gesture distance " << worst_keys << " keys, " << worst_clicks << " click(s)\n";
      return 0;
    }
    if (*serve) {
      auto cat = ocs::load_catalog(dir, {serve_public});
      std::optional<fs::path> snap;
      if (!snapshot.empty()) snap = snapshot;
      ocs::SessionStore sessions(cat, snap);
      ocs::HttpApi api(cat, sessions);
      int bound = api.bind(host, port);
      g_server = &api;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "serving " << cat.methods().size() << " methods on http://" << host << ":" << bound << "\n";
      api.listen();
      return 0;
    }
  } catch (const ocs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
