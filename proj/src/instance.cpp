#include "rota/instance.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>

namespace rota {

IntSet ColouredInstance::ground() const {
  IntSet g(ground_size());
  for (int e = 0; e < ground_size(); ++e) g[e] = e;
  return g;
}

void ColouredInstance::validate(int max_n) const {
  require(n >= 1, Error::Kind::Validation, "instance rank must be positive");
  require(n <= max_n, Error::Kind::SizeCap,
          "rank " + std::to_string(n) + " exceeds cap " + std::to_string(max_n));
  require(matroid != nullptr, Error::Kind::Validation, "missing matroid oracle");
  require(matroid->ground_size() == n * n, Error::Kind::Validation,
          "ground set must have n^2 elements");
  require(static_cast<int>(colour.size()) == n * n, Error::Kind::Validation,
          "colour table size mismatch");
  require(static_cast<int>(classes.size()) == n, Error::Kind::Validation,
          "expected n colour classes");
  require(static_cast<int>(external_id.size()) == n * n, Error::Kind::Validation,
          "external id table size mismatch");
  std::vector<char> seen(n * n, 0);
  for (int c = 0; c < n; ++c) {
    const auto& cls = classes[c];
    require(static_cast<int>(cls.size()) == n, Error::Kind::Validation,
            "class " + std::to_string(c + 1) + " must have exactly n elements");
    require(is_sorted_set(cls), Error::Kind::Validation, "class not sorted");
    for (int e : cls) {
      require(e >= 0 && e < n * n && !seen[e], Error::Kind::Validation,
              "classes overlap or reference bad ids");
      seen[e] = 1;
      require(colour[e] == c, Error::Kind::Validation, "colour table disagrees with classes");
    }
    require(matroid->is_independent(cls), Error::Kind::Validation,
            "class " + std::to_string(c + 1) + " is not a basis (dependent)");
  }
  require(matroid->full_rank() == n, Error::Kind::Validation,
          "matroid rank differs from n");
}

ColouredInstance build_instance(const Matroid& base,
                                const std::vector<std::vector<int>>& raw_bases,
                                int max_n) {
  int n = base.full_rank();
  require(static_cast<int>(raw_bases.size()) == n, Error::Kind::Validation,
          "need exactly rank-many raw bases");
  require(n >= 1 && n <= max_n, Error::Kind::SizeCap, "rank outside configured cap");
  for (int c = 0; c < n; ++c) {
    const auto& b = raw_bases[c];
    require(static_cast<int>(b.size()) == n, Error::Kind::Validation,
            "raw class " + std::to_string(c + 1) + " has wrong size");
    require(base.is_independent(b), Error::Kind::Validation,
            "raw class " + std::to_string(c + 1) + " is not a basis");
  }

  // Colour-major relabelling; repeated base elements become fresh copies.
  std::vector<int> base_ids;
  ColouredInstance inst;
  inst.n = n;
  for (int c = 0; c < n; ++c) {
    std::vector<int> sorted = raw_bases[c];
    std::sort(sorted.begin(), sorted.end());
    for (int b : sorted) {
      base_ids.push_back(b);
      inst.colour.push_back(c);
      inst.external_id.push_back(static_cast<long long>(base_ids.size()) - 1);
    }
  }
  inst.matroid = std::shared_ptr<const Matroid>(base.replicate(base_ids));
  inst.classes.assign(n, {});
  for (int e = 0; e < n * n; ++e) inst.classes[inst.colour[e]].push_back(e);
  inst.validate(max_n);
  return inst;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  fail(Error::Kind::Parse, "line " + std::to_string(line) + ": " + msg);
}

long long to_ll(const std::string& s, int line) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) parse_fail(line, "bad integer '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

// key=value field on an instance line
std::string field(const std::vector<std::string>& toks, const std::string& key, int line) {
  for (const auto& t : toks) {
    if (t.size() > key.size() + 1 && t.compare(0, key.size(), key) == 0 &&
        t[key.size()] == '=')
      return t.substr(key.size() + 1);
  }
  parse_fail(line, "missing field '" + key + "='");
}

struct RawElem {
  long long id;
  int colour;
  std::vector<int> vec;
  std::pair<int, int> edge;
};

}  // namespace

ColouredInstance parse_instance(std::istream& in, int max_n) {
  std::string line;
  int lineno = 0;

  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };

  if (!next_line() || line != "rota-instance v1")
    parse_fail(lineno ? lineno : 1, "expected header 'rota-instance v1'");

  if (!next_line()) parse_fail(lineno, "missing kind line");
  auto toks = split(line, ' ');
  if (toks.size() < 2 || toks[0] != "kind") parse_fail(lineno, "expected 'kind ...'");
  std::string kind = toks[1];
  int n = static_cast<int>(to_ll(field(toks, "n", lineno), lineno));
  if (n < 1) parse_fail(lineno, "n must be positive");
  if (n > max_n) parse_fail(lineno, "n exceeds cap " + std::to_string(max_n));
  int p = 0, v = 0;
  if (kind == "linear") {
    p = static_cast<int>(to_ll(field(toks, "p", lineno), lineno));
    if (!is_prime(p)) parse_fail(lineno, "p must be prime");
  } else if (kind == "graphic") {
    v = static_cast<int>(to_ll(field(toks, "v", lineno), lineno));
    if (v < 2) parse_fail(lineno, "vertex count too small");
  } else if (kind == "uniform") {
    // rank n over n^2 elements; nothing extra
  } else {
    parse_fail(lineno, "unknown kind '" + kind + "'");
  }

  std::vector<RawElem> elems;
  std::map<long long, int> id_seen;
  while (next_line()) {
    auto t = split(line, ' ');
    if (t[0] != "elem") parse_fail(lineno, "expected 'elem ...'");
    if (t.size() < 3) parse_fail(lineno, "truncated elem line");
    RawElem re;
    re.id = to_ll(t[1], lineno);
    if (id_seen.count(re.id)) parse_fail(lineno, "duplicate id " + std::to_string(re.id));
    id_seen[re.id] = 1;
    re.colour = static_cast<int>(to_ll(field(t, "colour", lineno), lineno));
    if (re.colour < 1 || re.colour > n) parse_fail(lineno, "colour out of range [1..n]");
    if (kind == "linear") {
      auto parts = split(field(t, "vec", lineno), ',');
      if (static_cast<int>(parts.size()) != n) parse_fail(lineno, "vec needs n entries");
      for (auto& s : parts) re.vec.push_back(static_cast<int>(to_ll(s, lineno)));
    } else if (kind == "graphic") {
      auto parts = split(field(t, "edge", lineno), ',');
      if (parts.size() != 2) parse_fail(lineno, "edge needs two endpoints");
      re.edge = {static_cast<int>(to_ll(parts[0], lineno)),
                 static_cast<int>(to_ll(parts[1], lineno))};
      if (re.edge.first < 0 || re.edge.first >= v || re.edge.second < 0 || re.edge.second >= v)
        parse_fail(lineno, "edge endpoint out of range");
    }
    elems.push_back(std::move(re));
  }
  if (static_cast<int>(elems.size()) != n * n)
    parse_fail(lineno, "expected n^2 = " + std::to_string(n * n) + " elements, got " +
                           std::to_string(elems.size()));

  // Canonical order: colour-major, then external id.
  std::stable_sort(elems.begin(), elems.end(), [](const RawElem& a, const RawElem& b) {
    return std::tie(a.colour, a.id) < std::tie(b.colour, b.id);
  });

  ColouredInstance inst;
  inst.n = n;
  for (const auto& re : elems) {
    inst.colour.push_back(re.colour - 1);
    inst.external_id.push_back(re.id);
  }
  if (kind == "linear") {
    std::vector<std::vector<int>> vecs;
    for (const auto& re : elems) vecs.push_back(re.vec);
    inst.matroid = std::make_shared<LinearMatroid>(p, n, std::move(vecs));
  } else if (kind == "graphic") {
    std::vector<std::pair<int, int>> edges;
    for (const auto& re : elems) edges.push_back(re.edge);
    inst.matroid = std::make_shared<GraphicMatroid>(v, std::move(edges));
  } else {
    inst.matroid = std::make_shared<UniformMatroid>(n, n * n);
  }
  inst.classes.assign(n, {});
  for (int e = 0; e < n * n; ++e) inst.classes[inst.colour[e]].push_back(e);
  try {
    inst.validate(max_n);
  } catch (const Error& err) {
    fail(Error::Kind::Parse, std::string("instance invalid: ") + err.what());
  }
  return inst;
}

ColouredInstance parse_instance_file(const std::string& path, int max_n) {
  std::ifstream in(path);
  require(in.good(), Error::Kind::Parse, "cannot open '" + path + "'");
  return parse_instance(in, max_n);
}

std::string serialize_instance(const ColouredInstance& inst) {
  std::ostringstream out;
  out << "rota-instance v1\n";
  const Matroid* m = inst.matroid.get();
  std::string kind = m->kind();
  if (kind == "linear") {
    const auto* lm = dynamic_cast<const LinearMatroid*>(m);
    out << "kind linear p=" << lm->prime() << " n=" << inst.n << "\n";
  } else if (kind == "graphic") {
    const auto* gm = dynamic_cast<const GraphicMatroid*>(m);
    out << "kind graphic v=" << gm->vertices() << " n=" << inst.n << "\n";
  } else {
    out << "kind uniform n=" << inst.n << "\n";
  }
  // Canonical element order: colour-major, external id ascending.
  for (int c = 0; c < inst.n; ++c) {
    std::vector<int> cls = inst.classes[c];
    std::sort(cls.begin(), cls.end(), [&](int a, int b) {
      return inst.external_id[a] < inst.external_id[b];
    });
    for (int e : cls) {
      out << "elem " << inst.external_id[e] << " colour=" << c + 1;
      if (kind == "linear") {
        const auto* lm = dynamic_cast<const LinearMatroid*>(m);
        out << " vec=";
        const auto& v = lm->vec(e);
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
      } else if (kind == "graphic") {
        const auto* gm = dynamic_cast<const GraphicMatroid*>(m);
        auto [u, w] = gm->edge(e);
        out << " edge=" << u << "," << w;
      }
      out << "\n";
    }
  }
  return out.str();
}

void write_instance_file(const ColouredInstance& inst, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), Error::Kind::Argument, "cannot write '" + path + "'");
  out << serialize_instance(inst);
}

std::string instance_digest(const ColouredInstance& inst) {
  std::string s = serialize_instance(inst);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace rota
