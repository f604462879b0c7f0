#include "fbc/io.hpp"

#include <fstream>
#include <map>
#include <set>

namespace fbc {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  require(j.is_object(), where + " must be an object");
  auto it = j.find(key);
  require(it != j.end(), where + " is missing \"" + key + "\"");
  return *it;
}

int as_int(const Json& j, const std::string& where) {
  require(j.is_number_integer(), where + " must be an integer");
  return j.get<int>();
}

std::vector<int> int_list(const Json& j, const std::string& where) {
  require(j.is_array(), where + " must be an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

int parse_id(const std::string& key, const std::string& where) {
  try {
    std::size_t used = 0;
    int v = std::stoi(key, &used);
    require(used == key.size(), where + ": bad id key '" + key + "'");
    return v;
  } catch (const std::logic_error&) {
    throw InputError(where + ": bad id key '" + key + "'");
  }
}

std::string gen_name(int i, int rank) { return i == rank ? std::string("t") : "a" + std::to_string(i + 1); }

Json real(long double x) { return static_cast<double>(x); }

} // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  require(j.is_string(), where + " must be a \"num/den\" string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
}

Json to_json(const Rational& q) { return format_rational(q); }

Json to_json(const QPoly& p) {
  Json c = Json::object();
  for (const auto& [e, v] : p.terms()) c[std::to_string(e)] = format_rational(v);
  return Json{{"field", "Q"}, {"coeffs", c}};
}

QPoly qpoly_from_json(const Json& j, const std::string& where) {
  const Json& f = field(j, "field", where);
  require(f == "Q", where + ": only field \"Q\" can be read");
  const Json& c = field(j, "coeffs", where);
  require(c.is_object(), where + ".coeffs must be an object");
  QPoly p;
  for (auto it = c.begin(); it != c.end(); ++it)
    p.add_term(parse_id(it.key(), where + ".coeffs"), rational_from_json(it.value(), where + ".coeffs." + it.key()));
  return p;
}

NielsenWord nielsen_from_json(const Json& j, const std::string& where) {
  NielsenWord w;
  w.rank = as_int(field(j, "rank", where), where + ".rank");
  const Json& fs = field(j, "nielsen", where);
  require(fs.is_array(), where + ".nielsen must be an array");
  using K = NielsenSymbol::Kind;
  const std::map<std::string, K> kinds{
      {"swap", K::Swap}, {"invert", K::Invert}, {"leftmul", K::LeftMul}, {"rightmul", K::RightMul}};
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const std::string at = where + ".nielsen[" + std::to_string(i) + "]";
    const Json& s = fs[i];
    require(s.is_array() && !s.empty() && s[0].is_string(), at + " must be [name, i, j]");
    auto k = kinds.find(s[0].get<std::string>());
    require(k != kinds.end(), at + ": unknown symbol " + s[0].dump());
    NielsenSymbol sym;
    sym.kind = k->second;
    if (sym.kind == K::Invert) {
      require(s.size() == 2, at + ": invert takes one index");
      sym.i = sym.j = as_int(s[1], at);
    } else {
      require(s.size() == 3, at + ": symbol takes two indices");
      sym.i = as_int(s[1], at);
      sym.j = as_int(s[2], at);
    }
    w.factors.push_back(sym);
  }
  try {
    validate(w);
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
  return w;
}

Json to_json(const NielsenWord& w) {
  Json fs = Json::array();
  for (const auto& s : w.factors) {
    if (s.kind == NielsenSymbol::Kind::Invert)
      fs.push_back(Json::array({s.name(), s.i}));
    else
      fs.push_back(Json::array({s.name(), s.i, s.j}));
  }
  return Json{{"rank", w.rank}, {"nielsen", fs}};
}

FreeEndo endo_from_json(const Json& j, const std::string& where) {
  const int n = as_int(field(j, "rank", where), where + ".rank");
  require(n >= 1, where + ".rank must be positive");
  std::optional<FreeEndo> from_images;
  if (j.contains("images")) {
    const Json& im = j["images"];
    require(im.is_array() && static_cast<int>(im.size()) == n, where + ".images must list one word per generator");
    std::vector<Letters> words;
    for (std::size_t i = 0; i < im.size(); ++i)
      words.push_back(int_list(im[i], where + ".images[" + std::to_string(i) + "]"));
    try {
      from_images = FreeEndo::from_images(n, words);
    } catch (const InputError& e) {
      throw InputError(where + ".images: " + e.what());
    }
  }
  if (j.contains("nielsen")) {
    FreeEndo e = endo_from_nielsen(nielsen_from_json(j, where));
    if (from_images) require(same_images(e, *from_images), where + ": images disagree with the Nielsen word");
    return e;
  }
  require(from_images.has_value(), where + " needs \"images\" or \"nielsen\"");
  return *from_images;
}

Json to_json(const FreeEndo& e) {
  Json im = Json::array();
  for (const auto& w : e.images) im.push_back(w.letters);
  Json out{{"rank", e.rank}, {"images", im}};
  if (e.nielsen) out["nielsen"] = to_json(*e.nielsen)["nielsen"];
  return out;
}

namespace {

struct ParsedGraph {
  Graph graph;
  std::map<int, int> vindex, eindex;  // external id -> index
};

ParsedGraph graph_from_json(const Json& j, const std::string& where) {
  ParsedGraph pg;
  const auto vs = int_list(field(j, "vertices", where), where + ".vertices");
  for (int v : vs) {
    require(pg.vindex.emplace(v, static_cast<int>(pg.graph.vertex_ids.size())).second,
            where + ": duplicate vertex id " + std::to_string(v));
    pg.graph.vertex_ids.push_back(v);
  }
  const Json& es = field(j, "edges", where);
  require(es.is_array(), where + ".edges must be an array");
  for (std::size_t k = 0; k < es.size(); ++k) {
    const std::string at = where + ".edges[" + std::to_string(k) + "]";
    const int id = as_int(field(es[k], "id", at), at + ".id");
    const int from = as_int(field(es[k], "from", at), at + ".from");
    const int to = as_int(field(es[k], "to", at), at + ".to");
    require(id > 0, at + ": edge ids must be positive");
    require(pg.vindex.count(from) && pg.vindex.count(to), at + ": unknown endpoint");
    require(pg.eindex.emplace(id, static_cast<int>(k)).second, at + ": duplicate edge id");
    pg.graph.edges.push_back({id, pg.vindex[from], pg.vindex[to]});
  }
  return pg;
}

std::vector<int> vertex_map_from_json(const Json& j, const ParsedGraph& pg, const std::string& where) {
  const Json& vm = field(j, "vertex_map", where);
  require(vm.is_object(), where + ".vertex_map must be an object");
  std::vector<int> out(pg.graph.num_vertices(), -1);
  for (auto it = vm.begin(); it != vm.end(); ++it) {
    const int v = parse_id(it.key(), where + ".vertex_map");
    require(pg.vindex.count(v), where + ".vertex_map: unknown vertex " + it.key());
    const int w = as_int(it.value(), where + ".vertex_map." + it.key());
    require(pg.vindex.count(w), where + ".vertex_map." + it.key() + ": unknown target vertex");
    out[static_cast<std::size_t>(pg.vindex.at(v))] = pg.vindex.at(w);
  }
  for (std::size_t v = 0; v < out.size(); ++v)
    require(out[v] >= 0, where + ".vertex_map: vertex " + std::to_string(pg.graph.vertex_ids[v]) + " has no image");
  return out;
}

std::vector<EdgePath> images_from_json(const Json& j, const ParsedGraph& pg, const std::string& where,
                                       bool allow_flip) {
  const Json& im = field(j, "edge_images", where);
  require(im.is_object(), where + ".edge_images must be an object");
  std::vector<EdgePath> out(pg.graph.num_edges());
  std::vector<bool> seen(out.size(), false);
  for (auto it = im.begin(); it != im.end(); ++it) {
    const std::string at = where + ".edge_images." + it.key();
    const int id = parse_id(it.key(), at);
    require(pg.eindex.count(id), at + ": unknown edge");
    const int k = pg.eindex.at(id);
    for (int l : int_list(it.value(), at)) {
      if (l == 0) {
        require(allow_flip, at + ": letter 0 is only meaningful for Coxeter maps");
        out[static_cast<std::size_t>(k)].push_back(kFlip);
        continue;
      }
      auto e = pg.eindex.find(std::abs(l));
      require(e != pg.eindex.end(), at + ": unknown edge " + std::to_string(l));
      out[static_cast<std::size_t>(k)].push_back(l > 0 ? e->second + 1 : -(e->second + 1));
    }
    seen[static_cast<std::size_t>(k)] = true;
  }
  for (std::size_t k = 0; k < out.size(); ++k)
    require(seen[k], where + ".edge_images: edge " + std::to_string(pg.graph.edges[k].id) + " has no image");
  return out;
}

} // namespace

GraphMap graphmap_from_json(const Json& j, const std::string& where) {
  ParsedGraph pg = graph_from_json(j, where);
  GraphMap g;
  g.vertex_map = vertex_map_from_json(j, pg, where);
  g.images = images_from_json(j, pg, where, false);
  g.graph = std::move(pg.graph);
  try {
    validate(g);
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
  return g;
}

Json to_json(const GraphMap& g) {
  const Graph& G = g.graph;
  Json edges = Json::array(), vm = Json::object(), im = Json::object();
  for (const auto& e : G.edges)
    edges.push_back({{"id", e.id}, {"from", G.vertex_ids[static_cast<std::size_t>(e.from)]},
                     {"to", G.vertex_ids[static_cast<std::size_t>(e.to)]}});
  for (std::size_t v = 0; v < G.num_vertices(); ++v)
    vm[std::to_string(G.vertex_ids[v])] = G.vertex_ids[static_cast<std::size_t>(g.vertex_map[v])];
  for (std::size_t k = 0; k < G.num_edges(); ++k) {
    Json w = Json::array();
    for (int l : g.images[k]) {
      const int id = G.edges[static_cast<std::size_t>(std::abs(l) - 1)].id;
      w.push_back(l > 0 ? id : -id);
    }
    im[std::to_string(G.edges[k].id)] = w;
  }
  return Json{{"vertices", G.vertex_ids}, {"edges", edges}, {"vertex_map", vm}, {"edge_images", im}};
}

CoxeterGraphMap coxeter_map_from_json(const Json& j, const std::string& where) {
  ParsedGraph pg = graph_from_json(j, where);
  CoxeterGraphMap g;
  g.domain.essential.assign(pg.graph.num_vertices(), false);
  for (int v : int_list(field(j, "essential", where), where + ".essential")) {
    require(pg.vindex.count(v), where + ".essential: unknown vertex " + std::to_string(v));
    g.domain.essential[static_cast<std::size_t>(pg.vindex.at(v))] = true;
  }
  g.vertex_map = vertex_map_from_json(j, pg, where);
  g.images = images_from_json(j, pg, where, true);
  g.domain.graph = std::move(pg.graph);
  try {
    validate(g);
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
  return g;
}

FiniteQuotient quotient_from_json(const Json& j, int rank, const std::string& where) {
  FiniteQuotient q;
  q.degree = as_int(field(j, "degree", where), where + ".degree");
  require(q.degree >= 1, where + ".degree must be at least 1");
  const Json& gp = field(j, "gen_perms", where);
  for (int i = 0; i <= rank; ++i) {
    const std::string name = gen_name(i, rank);
    const std::string at = where + ".gen_perms." + name;
    Perm p = int_list(field(gp, name.c_str(), where + ".gen_perms"), at);
    try {
      validate_perm(p, q.degree);
    } catch (const InputError& e) {
      throw InputError(at + ": " + e.what());
    }
    q.gens.push_back(std::move(p));
  }
  require(gp.size() == static_cast<std::size_t>(rank + 1), where + ".gen_perms has unexpected generators");
  return q;
}

Representation rep_from_json(const Json& j, int rank, const std::string& where) {
  Representation r;
  r.dim = as_int(field(j, "dim", where), where + ".dim");
  require(r.dim >= 1, where + ".dim must be positive");
  const Json& gm = field(j, "gen_matrices", where);
  const std::size_t k = static_cast<std::size_t>(r.dim);
  for (int i = 0; i <= rank; ++i) {
    const std::string name = gen_name(i, rank);
    const std::string at = where + ".gen_matrices." + name;
    const Json& m = field(gm, name.c_str(), where + ".gen_matrices");
    require(m.is_array() && m.size() == k, at + " must have " + std::to_string(k) + " rows");
    QMatrix q(k, k);
    for (std::size_t a = 0; a < k; ++a) {
      require(m[a].is_array() && m[a].size() == k, at + " row " + std::to_string(a) + " has the wrong length");
      for (std::size_t b = 0; b < k; ++b)
        q(a, b) = rational_from_json(m[a][b], at + "[" + std::to_string(a) + "][" + std::to_string(b) + "]");
    }
    r.gen_matrices.push_back(std::move(q));
  }
  require(gm.size() == static_cast<std::size_t>(rank + 1), where + ".gen_matrices has unexpected generators");
  return r;
}

FingerprintInput fingerprint_input_from_json(const Json& j) {
  FingerprintInput in;
  in.monodromy = endo_from_json(field(j, "monodromy", "spec"), "monodromy");
  const int n = in.monodromy.rank;
  if (j.contains("representatives")) {
    const Json& r = j["representatives"];
    if (r.contains("plus")) in.plus = graphmap_from_json(r["plus"], "representatives.plus");
    if (r.contains("minus")) in.minus = graphmap_from_json(r["minus"], "representatives.minus");
  }
  if (j.contains("twisted")) {
    const Json& t = j["twisted"];
    require(t.is_array(), "twisted must be an array");
    for (std::size_t i = 0; i < t.size(); ++i) {
      const std::string at = "twisted[" + std::to_string(i) + "]";
      const Json& lab = field(t[i], "label", at);
      require(lab.is_string(), at + ".label must be a string");
      in.twisted.push_back({lab.get<std::string>(), quotient_from_json(field(t[i], "quotient", at), n, at + ".quotient"),
                            rep_from_json(field(t[i], "rep", at), n, at + ".rep")});
    }
  }
  return in;
}

Json to_json(const Torsion& t) { return Json{{"num", to_json(t.num)}, {"den", to_json(t.den)}}; }

namespace {

Json to_json(const StretchEntry& s) {
  Json strata = Json::array();
  for (auto x : s.strata) strata.push_back(real(x));
  return Json{{"lambda", real(s.lambda)}, {"irreducible", s.irreducible}, {"train_track", s.train_track},
              {"strata", strata}};
}

} // namespace

Json to_json(const Fingerprint& f) {
  Json tw = Json::array();
  for (const auto& e : f.twisted)
    tw.push_back({{"label", e.label},
                  {"delta0", to_json(e.delta0)},
                  {"delta1", to_json(e.delta1)},
                  {"tau", to_json(e.tau)},
                  {"delta_pair", Json::array({to_json(e.delta.first), to_json(e.delta.second)})},
                  {"palindromic_product", to_json(e.delta.product)},
                  {"tau_pair", Json::array({to_json(e.tau_first), to_json(e.tau_second)})}});
  Json out{{"fibre_rank", f.fibre_rank},
           {"b1", f.b1},
           {"char_pair", Json::array({to_json(f.char_first), to_json(f.char_second)})},
           {"nu_pair", {{"values", Json::array({real(f.nu_pair.first), real(f.nu_pair.second)})},
                        {"certified", f.nu_pair.certified}}},
           {"lambda_pair", nullptr},
           {"twisted", tw}};
  if (f.lambda_pair) {
    const bool caveat = !(f.lambda_pair->first.irreducible && f.lambda_pair->first.train_track &&
                          f.lambda_pair->second.irreducible && f.lambda_pair->second.train_track);
    out["lambda_pair"] = {{"values", Json::array({real(f.lambda_pair->first.lambda), real(f.lambda_pair->second.lambda)})},
                          {"representatives", Json::array({to_json(f.lambda_pair->first), to_json(f.lambda_pair->second)})},
                          {"irreducible_representatives", f.lambda_pair->first.irreducible && f.lambda_pair->second.irreducible},
                          {"non_train_track_caveat", caveat}};
  }
  return out;
}

Json to_json(const Verdict& v) {
  return Json{{"verdict", v.distinguished ? "Distinguished" : "NotDistinguished"},
              {"witnesses", v.witnesses},
              {"checked", v.checked}};
}

Json traintrack_report(const GraphMap& g, int period, long double tol) {
  require(period >= 1, "period must be at least 1");
  validate(g);
  const Filtration f = maximal_filtration(g, tol);
  Json strata = Json::array();
  for (const auto& s : f.strata) {
    Json ids = Json::array();
    for (int e : s.edges) ids.push_back(g.graph.edges[static_cast<std::size_t>(e)].id);
    Json st{{"edges", ids}, {"zero", s.zero}};
    if (!s.zero)
      st["pf"] = {{"lambda", real(s.pf.lambda)}, {"lower", real(s.pf.lower)}, {"upper", real(s.pf.upper)},
                  {"exact", s.pf.exact}};
    strata.push_back(st);
  }
  const QMatrix h = to_q(abelianization_matrix(induced_automorphism(g)));
  Json table = Json::array();
  QMatrix hp = q_identity(h.rows());
  for (int m = 1; m <= period; ++m) {
    hp = hp * h;
    Rational tr = 0;
    for (std::size_t i = 0; i < hp.rows(); ++i) tr += hp(i, i);
    Json row{{"m", m}, {"lefschetz_untwisted", to_json(Rational(1 - tr))}};
    const FixedPointCounts c = fixed_point_counts(g, m);
    Json per_edge = Json::object();
    for (std::size_t k = 0; k < g.graph.num_edges(); ++k) {
      Json e{{"crossings", c.crossings[k]}};
      // interior counts are undefined when some edge is fixed pointwise
      e["interior"] = c.degenerate ? Json() : Json(c.interior[k]);
      per_edge[std::to_string(g.graph.edges[k].id)] = e;
    }
    row["edges"] = per_edge;
    Json fv = Json::array();
    for (int v : c.fixed_vertices) fv.push_back(g.graph.vertex_ids[static_cast<std::size_t>(v)]);
    row["fixed_vertices"] = fv;
    row["degenerate"] = c.degenerate;
    if (!c.degenerate) {
      const PeriodicData d = periodic_points(g, m);
      long index_sum = 0;
      for (const auto& p : d.points) index_sum += p.index;
      Json orbits = Json::array();
      for (const auto& o : d.orbits) {
        const PeriodicPoint& p = d.points[o.representative];
        Json loc = p.is_vertex ? Json{{"vertex", g.graph.vertex_ids[static_cast<std::size_t>(p.vertex)]}}
                               : Json{{"edge", g.graph.edges[static_cast<std::size_t>(p.edge)].id},
                                      {"position", p.position},
                                      {"coordinate", to_json(p.coordinate)}};
        orbits.push_back({{"period", o.period}, {"size", o.members.size()}, {"index", o.index},
                          {"location", loc}, {"cd_word", o.cd_word}});
      }
      row["points"] = d.points.size();
      row["index_sum"] = index_sum;
      row["orbits"] = orbits;
    }
    table.push_back(row);
  }
  return Json{{"strata", strata},
              {"irreducible", f.irreducible()},
              {"train_track", is_train_track(g)},
              {"lambda", real(stretch_factor(g, tol))},
              {"fixed_points", table}};
}

Json coxeter_report(const CoxeterGraphMap& g, long double tol) {
  const CoxeterStretch s = coxeter_stretch(g, tol);
  const GraphMap d = free_double_representative(g);
  const Filtration f = maximal_filtration(d);
  return Json{{"rank", g.domain.rank()},
              {"stretch", real(s.base)},
              {"double_stretch", real(s.doubled)},
              {"double_rank", d.graph.rank()},
              {"double_irreducible", f.irreducible()},
              {"double_strata", f.strata.size()},
              {"double", to_json(d)}};
}

} // namespace fbc
