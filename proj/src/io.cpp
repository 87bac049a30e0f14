#include "granda/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace granda {

namespace {

using ojson = nlohmann::ordered_json;

std::string set_name(IndexSet s) {
  switch (s) {
    case IndexSet::N: return "N";
    case IndexSet::N0: return "N0";
    case IndexSet::Z: return "Z";
  }
  throw std::logic_error("set_name: bad index set");
}

IndexSet set_from(const std::string& s) {
  if (s == "N") return IndexSet::N;
  if (s == "N0") return IndexSet::N0;
  if (s == "Z") return IndexSet::Z;
  throw std::invalid_argument("index_set must be one of N, N0, Z");
}

}  // namespace

ojson sequence_to_json(const GrandSequence& x) {
  ojson j;
  j["index_set"] = set_name(x.index_set);
  ojson entries = ojson::array();
  for (const auto& [k, v] : x.entries) entries.push_back(ojson::array({k, v}));
  j["entries"] = std::move(entries);
  if (x.tail) {
    ojson t;
    t["n0"] = x.tail->n0;
    t["a"] = x.tail->a;
    t["b"] = x.tail->b;
    j["tail"] = std::move(t);
  }
  return j;
}

GrandSequence sequence_from_json(const nlohmann::json& j) {
  std::vector<std::pair<std::int64_t, double>> entries;
  for (const auto& e : j.at("entries"))
    entries.emplace_back(e.at(0).get<std::int64_t>(), e.at(1).get<double>());
  std::optional<PowerLogTail> tail;
  if (j.contains("tail")) {
    const auto& t = j.at("tail");
    tail = PowerLogTail{t.at("n0").get<std::int64_t>(), t.at("a").get<double>(),
                        t.at("b").get<double>()};
  }
  return make_sequence(set_from(j.at("index_set").get<std::string>()),
                       std::move(entries), tail);
}

ojson step_to_json(const StepFunction& g) {
  ojson j;
  j["index_set"] = set_name(g.index_set);
  ojson pieces = ojson::array();
  for (const StepPiece& piece : g.pieces) {
    ojson p;
    p["k"] = piece.k;
    ojson cells = ojson::array();
    for (const StepCell& c : piece.cells)
      cells.push_back(ojson::array({c.width, c.value}));
    p["cells"] = std::move(cells);
    pieces.push_back(std::move(p));
  }
  j["pieces"] = std::move(pieces);
  if (g.family) {
    ojson f;
    f["kind"] = g.family->kind == AnalyticFamily::Kind::Plateau ? "plateau"
                                                                : "shrinking";
    f["n0"] = g.family->n0;
    if (g.family->kind == AnalyticFamily::Kind::Plateau) {
      f["a"] = g.family->a;
      f["b"] = g.family->b;
    } else {
      f["growth"] = g.family->growth;
      f["gamma"] = g.family->gamma;
    }
    j["family"] = std::move(f);
  }
  return j;
}

StepFunction step_from_json(const nlohmann::json& j) {
  std::vector<StepPiece> pieces;
  for (const auto& p : j.at("pieces")) {
    StepPiece piece;
    piece.k = p.at("k").get<std::int64_t>();
    for (const auto& c : p.at("cells"))
      piece.cells.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
    pieces.push_back(std::move(piece));
  }
  std::optional<AnalyticFamily> family;
  if (j.contains("family")) {
    const auto& f = j.at("family");
    AnalyticFamily fam;
    std::string kind = f.at("kind").get<std::string>();
    fam.n0 = f.at("n0").get<std::int64_t>();
    if (kind == "plateau") {
      fam.kind = AnalyticFamily::Kind::Plateau;
      fam.a = f.at("a").get<double>();
      fam.b = f.at("b").get<double>();
    } else if (kind == "shrinking") {
      fam.kind = AnalyticFamily::Kind::Shrinking;
      fam.growth = f.at("growth").get<double>();
      fam.gamma = f.at("gamma").get<double>();
    } else {
      throw std::invalid_argument("family kind must be plateau or shrinking");
    }
    family = fam;
  }
  return make_step(set_from(j.at("index_set").get<std::string>()),
                   std::move(pieces), family);
}

std::string canonical_text(const ojson& j) { return j.dump(2) + "\n"; }

std::string record_line(const ojson& j) { return j.dump(); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace granda
