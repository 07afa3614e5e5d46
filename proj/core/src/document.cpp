#include "fixcat/document.hpp"

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"

namespace fixcat {

using json = nlohmann::json;

namespace {

const std::vector<std::string> kSections{"categories",    "functors",   "transformations",   "pretopologies",
                                         "enrichments",   "presheaves", "presheaf_morphisms"};

int line_at(const std::string& text, std::size_t pos) {
  pos = std::min(pos, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
}

std::string regex_escape(const std::string& s) {
  static const std::regex special(R"([.^$|()\[\]{}*+?\\])");
  return std::regex_replace(s, special, R"(\$&)");
}

// Source positions are recovered by searching the raw text: the section key,
// then the entity's "name" entry, then the referenced token.
class Locator {
 public:
  explicit Locator(const std::string& text) : text_(text) {}

  int entity_line(const std::string& section, const std::string& entity) const {
    return line_at(text_, entity_pos(section, entity));
  }

  int reference_line(const std::string& section, const std::string& entity, const std::string& value) const {
    const std::regex token("\"" + regex_escape(value) + "\"");
    for (std::size_t from : {entity_pos(section, entity), section_pos(section)}) {
      std::smatch m;
      auto begin = text_.begin() + static_cast<std::ptrdiff_t>(from);
      if (std::regex_search(begin, text_.end(), m, token))
        return line_at(text_, from + static_cast<std::size_t>(m.position(0)));
    }
    return entity_line(section, entity);
  }

 private:
  std::size_t section_pos(const std::string& section) const {
    auto p = text_.find("\"" + section + "\"");
    return p == std::string::npos ? 0 : p;
  }

  std::size_t entity_pos(const std::string& section, const std::string& entity) const {
    const std::size_t from = section_pos(section);
    const std::regex name("\"name\"\\s*:\\s*\"" + regex_escape(entity) + "\"");
    std::smatch m;
    auto begin = text_.begin() + static_cast<std::ptrdiff_t>(from);
    if (std::regex_search(begin, text_.end(), m, name)) return from + static_cast<std::size_t>(m.position(0));
    return from;
  }

  const std::string& text_;
};

class Loader {
 public:
  Loader(const std::string& text, const LoadOptions& options) : locate_(text), options_(options) {}

  Document run(const json& root) {
    if (!root.is_object()) throw ParseError("the document must be a JSON object", 1);
    for (const auto& [key, value] : root.items()) {
      if (std::find(kSections.begin(), kSections.end(), key) == kSections.end())
        throw ParseError("unknown section '" + key + "'", 1);
      if (!value.is_array()) throw ParseError("section '" + key + "' must be an array", 1);
    }
    each(root, "categories", [&](const json& e, const std::string& name) { category(e, name); });
    each(root, "functors", [&](const json& e, const std::string& name) { functor(e, name); });
    each(root, "transformations", [&](const json& e, const std::string& name) { transformation(e, name); });
    each(root, "pretopologies", [&](const json& e, const std::string& name) { pretopology(e, name); });
    each(root, "enrichments", [&](const json& e, const std::string& name) { enrichment(e, name); });
    each(root, "presheaves", [&](const json& e, const std::string& name) { presheaf(e, name); });
    each(root, "presheaf_morphisms", [&](const json& e, const std::string& name) { presheaf_morphism(e, name); });
    return std::move(doc_);
  }

 private:
  template <class Fn>
  void each(const json& root, const std::string& section, Fn&& fn) {
    if (!root.contains(section)) return;
    section_ = section;
    std::set<std::string> seen;
    for (const json& e : root.at(section)) {
      if (!e.is_object() || !e.contains("name") || !e.at("name").is_string())
        throw ParseError("every entry of '" + section + "' needs a string name", locate_.entity_line(section, ""));
      const std::string name = e.at("name").get<std::string>();
      if (!seen.insert(name).second)
        throw ParseError("duplicate " + section + " entry '" + name + "'", locate_.entity_line(section, name));
      entity_ = name;
      fn(e, name);
    }
  }

  [[noreturn]] void parse_fail(const std::string& message) const {
    throw ParseError(section_ + " '" + entity_ + "': " + message, locate_.entity_line(section_, entity_));
  }

  [[noreturn]] void invalid(const ValidationReport& r) const {
    ValidationReport wrapped = r;
    wrapped.message = section_ + " '" + entity_ + "': " + r.message;
    throw ValidationError(wrapped);
  }

  [[noreturn]] void invalid(const std::string& code, const std::string& message) const {
    invalid(ValidationReport::fail(code, message));
  }

  const json& field(const json& e, const std::string& key) const {
    if (!e.contains(key)) parse_fail("missing field '" + key + "'");
    return e.at(key);
  }

  std::string str(const json& e, const std::string& key) const {
    const json& v = field(e, key);
    if (!v.is_string()) parse_fail("field '" + key + "' must be a string");
    return v.get<std::string>();
  }

  std::string as_string(const json& v, const std::string& what) const {
    if (!v.is_string()) parse_fail(what + " must be a string");
    return v.get<std::string>();
  }

  std::map<std::string, std::string> string_map(const json& e, const std::string& key) const {
    const json& v = field(e, key);
    if (!v.is_object()) parse_fail("field '" + key + "' must be an object");
    std::map<std::string, std::string> out;
    for (const auto& [k, val] : v.items()) out[k] = as_string(val, "entry '" + k + "' of '" + key + "'");
    return out;
  }

  template <class Map>
  const typename Map::mapped_type& ref(const Map& map, const json& e, const std::string& key,
                                       const std::string& kind) const {
    const std::string target = str(e, key);
    auto it = map.find(target);
    if (it == map.end())
      throw ReferenceError(target, section_ + " '" + entity_ + "' refers to undefined " + kind + " '" + target + "'",
                           locate_.reference_line(section_, entity_, target));
    return it->second;
  }

  Integer integer(const json& v) const {
    if (v.is_number_integer()) return Integer(v.get<long>());
    if (v.is_string()) {
      try {
        return Integer(v.get<std::string>());
      } catch (const std::invalid_argument&) {
      }
    }
    parse_fail("expected an integer");
  }

  PresentedAbGroup group(const json& g) const {
    if (!g.is_object()) parse_fail("a group must be an object");
    if (g.contains("orders")) {
      IntVector orders;
      for (const json& o : g.at("orders")) orders.push_back(integer(o));
      return PresentedAbGroup::from_orders(orders);
    }
    const json& k = field(g, "generators");
    if (!k.is_number_unsigned()) parse_fail("'generators' must be a non-negative integer");
    const std::size_t gens = k.get<std::size_t>();
    std::vector<IntVector> cols;
    if (g.contains("relations"))
      for (const json& rel : g.at("relations")) {
        if (!rel.is_array() || rel.size() != gens) parse_fail("each relation needs one entry per generator");
        IntVector col;
        for (const json& x : rel) col.push_back(integer(x));
        cols.push_back(std::move(col));
      }
    return PresentedAbGroup(gens, IntMatrix::from_columns(gens, cols));
  }

  AbHom hom(const json& m, const PresentedAbGroup& source, const PresentedAbGroup& target, const std::string& code,
            const std::string& where) const {
    if (!m.is_array()) parse_fail(where + " must be a list of rows");
    const std::size_t rows = target.generators(), cols = source.generators();
    if (m.size() != rows)
      invalid(code, where + " has " + std::to_string(m.size()) + " rows, expected " + std::to_string(rows));
    IntMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      if (!m[r].is_array() || m[r].size() != cols)
        invalid(code, where + " row " + std::to_string(r) + " needs " + std::to_string(cols) + " entries");
      for (std::size_t c = 0; c < cols; ++c) out(r, c) = integer(m[r][c]);
    }
    return AbHom{source, target, std::move(out)};
  }

  Obj object_in(const FinCategory& c, const std::string& id) const {
    auto x = c.find_object(id);
    if (!x) invalid("Malformed", "unknown object '" + id + "' of " + c.name());
    return *x;
  }

  Mor morphism_in(const FinCategory& c, const std::string& id) const {
    auto m = c.find_morphism(id);
    if (!m) invalid("Malformed", "unknown morphism '" + id + "' of " + c.name());
    return *m;
  }

  // ------------------------------------------------------------ entities

  void category(const json& e, const std::string& name) {
    CategoryData d;
    for (const json& o : field(e, "objects")) d.objects.push_back(as_string(o, "object id"));
    for (const json& m : field(e, "morphisms")) {
      if (!m.is_object()) parse_fail("morphisms must be {id, dom, cod} objects");
      d.morphisms.push_back({str(m, "id"), str(m, "dom"), str(m, "cod")});
    }
    d.identities = string_map(e, "identities");
    for (const json& t : field(e, "composition")) {
      if (!t.is_array() || t.size() != 3) parse_fail("composition entries must be [g, f, g o f]");
      d.composition.push_back({as_string(t[0], "g"), as_string(t[1], "f"), as_string(t[2], "g o f")});
    }
    if (auto r = validate_category(d); !r) invalid(r);
    doc_.categories[name] = FinCategory::from_data(d, name);
  }

  void functor(const json& e, const std::string& name) {
    const CategoryPtr& s = ref(doc_.categories, e, "source", "category");
    const CategoryPtr& t = ref(doc_.categories, e, "target", "category");
    Functor f;
    try {
      f = Functor::from_ids(s, t, string_map(e, "objects"), string_map(e, "morphisms"), name);
    } catch (const ValidationError&) {
      throw;
    } catch (const Error& err) {
      invalid(err.code(), err.what());
    }
    if (auto r = validate_functor(f); !r) invalid(r);
    doc_.functors[name] = std::move(f);
  }

  void transformation(const json& e, const std::string& name) {
    const Functor& from = ref(doc_.functors, e, "from", "functor");
    const Functor& to = ref(doc_.functors, e, "to", "functor");
    if (!same_category(from.source(), to.source()) || !same_category(from.target(), to.target()))
      invalid("Malformed", "functors " + from.name() + " and " + to.name() + " are not parallel");
    const FinCategory& s = *from.source();
    std::vector<Mor> comps(s.num_objects(), kNone);
    for (const auto& [x, m] : string_map(e, "components")) comps[object_in(s, x)] = morphism_in(*from.target(), m);
    for (Obj x = 0; x < s.num_objects(); ++x)
      if (comps[x] == kNone) invalid("Malformed", "no component at '" + s.object_id(x) + "'");
    NatTransformation eta(from, to, comps, name);
    if (auto r = validate_nat_transformation(eta); !r) invalid(r);
    doc_.transformations[name] = std::move(eta);
  }

  void pretopology(const json& e, const std::string& name) {
    const CategoryPtr& base = ref(doc_.categories, e, "category", "category");
    const FinCategory& c = *base;
    std::vector<std::vector<CoveringFamily>> covers(c.num_objects());
    const json& cv = field(e, "covers");
    if (!cv.is_object()) parse_fail("'covers' must map objects to lists of families");
    for (const auto& [x, fams] : cv.items()) {
      const Obj ox = object_in(c, x);
      for (const json& fam : fams) {
        CoveringFamily family;
        const json& members = fam.is_object() ? field(fam, "members") : fam;
        if (!members.is_array()) parse_fail("a covering family must be a list of morphism ids");
        for (const json& m : members) family.members.push_back(morphism_in(c, as_string(m, "family member")));
        for (Mor m : family.members)
          if (c.cod(m) != ox)
            invalid("Malformed", "family member " + c.morphism_id(m) + " does not land in '" + x + "'");
        family.name = fam.is_object() && fam.contains("name") ? str(fam, "name")
                                                              : default_family_name(c, family.members);
        covers[ox].push_back(std::move(family));
      }
    }
    Pretopology p;
    if (e.contains("closure") && e.at("closure").is_boolean() && e.at("closure").get<bool>()) {
      p = close_pretopology(base, covers, name, options_.membership);
    } else {
      p.name = name;
      p.base = base;
      p.covers = std::move(covers);
    }
    if (auto r = check_pretopology(p, options_.membership); !r) invalid(r);
    doc_.pretopologies[name] = std::move(p);
  }

  void enrichment(const json& e, const std::string& name) {
    const CategoryPtr& base = ref(doc_.categories, e, "category", "category");
    const FinCategory& c = *base;
    AbEnrichment en = empty_enrichment(base);
    const std::size_t m = c.num_morphisms();
    const std::size_t k = c.num_objects();
    for (const json& t : field(e, "addition")) {
      if (!t.is_array() || t.size() != 3) parse_fail("addition entries must be [f, g, f + g]");
      Mor f = morphism_in(c, as_string(t[0], "f")), g = morphism_in(c, as_string(t[1], "g"));
      en.sum[f * m + g] = morphism_in(c, as_string(t[2], "f + g"));
    }
    for (const json& t : field(e, "zero")) {
      if (!t.is_array() || t.size() != 3) parse_fail("zero entries must be [X, Y, zero]");
      Obj x = object_in(c, as_string(t[0], "X")), y = object_in(c, as_string(t[1], "Y"));
      en.zero[x * k + y] = morphism_in(c, as_string(t[2], "zero"));
    }
    if (e.contains("biproducts"))
      for (const json& b : e.at("biproducts")) {
        if (!b.is_object()) parse_fail("biproducts must be objects");
        en.biproducts.push_back({object_in(c, str(b, "left")), object_in(c, str(b, "right")),
                                 object_in(c, str(b, "sum")), morphism_in(c, str(b, "in_left")),
                                 morphism_in(c, str(b, "in_right")), morphism_in(c, str(b, "out_left")),
                                 morphism_in(c, str(b, "out_right"))});
      }
    if (auto r = check_additive(en); !r) invalid(r);
    doc_.enrichments[name] = std::move(en);
  }

  void presheaf(const json& e, const std::string& name) {
    const Pretopology& site = ref(doc_.pretopologies, e, "site", "pretopology");
    const FinCategory& c = *site.base;
    Presheaf mu{name, site, std::vector<PresentedAbGroup>(c.num_objects()), {}};
    const json& values = field(e, "values");
    std::vector<bool> given(c.num_objects(), false);
    for (const auto& [x, g] : values.items()) {
      Obj ox = object_in(c, x);
      mu.values[ox] = group(g);
      given[ox] = true;
    }
    for (Obj x = 0; x < c.num_objects(); ++x)
      if (!given[x]) invalid("Malformed", "no value at '" + c.object_id(x) + "'");
    const json& rs = field(e, "restrictions");
    std::vector<std::optional<AbHom>> res(c.num_morphisms());
    for (const auto& [f, mat] : rs.items()) {
      Mor mf = morphism_in(c, f);
      res[mf] = hom(mat, mu.values[c.cod(mf)], mu.values[c.dom(mf)], "RestrictionIllTyped", "restriction " + f);
    }
    for (Mor f = 0; f < c.num_morphisms(); ++f) {
      if (res[f]) {
        mu.restrictions.push_back(*res[f]);
      } else if (c.is_identity(f)) {
        mu.restrictions.push_back(AbHom::identity(mu.values[c.dom(f)]));
      } else {
        invalid("Malformed", "no restriction along '" + c.morphism_id(f) + "'");
      }
    }
    if (auto r = validate_presheaf(mu); !r) invalid(r);
    doc_.presheaves[name] = std::move(mu);
  }

  void presheaf_morphism(const json& e, const std::string& name) {
    const Presheaf& from = ref(doc_.presheaves, e, "from", "presheaf");
    const Presheaf& to = ref(doc_.presheaves, e, "to", "presheaf");
    if (!same_category(from.base(), to.base()))
      invalid("Malformed", "presheaves " + from.name + " and " + to.name + " live on different categories");
    const FinCategory& c = *from.base();
    PresheafMorphism m{name, from, to, {}};
    std::vector<std::optional<AbHom>> comps(c.num_objects());
    const json& cs = field(e, "components");
    for (const auto& [x, mat] : cs.items()) {
      Obj ox = object_in(c, x);
      comps[ox] = hom(mat, from.values[ox], to.values[ox], "ComponentIllTyped", "component " + x);
    }
    for (Obj x = 0; x < c.num_objects(); ++x) {
      if (!comps[x]) invalid("Malformed", "no component at '" + c.object_id(x) + "'");
      m.components.push_back(*comps[x]);
    }
    if (auto r = validate_presheaf_morphism(m); !r) invalid(r);
    doc_.presheaf_morphisms[name] = std::move(m);
  }

  Locator locate_;
  LoadOptions options_;
  Document doc_;
  std::string section_;
  std::string entity_;
};

// ------------------------------------------------------------ serialization

json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

json group_json(const PresentedAbGroup& g) {
  json rels = json::array();
  for (std::size_t c = 0; c < g.relations().cols(); ++c) {
    json col = json::array();
    for (const Integer& v : g.relations().column(c)) col.push_back(integer_json(v));
    rels.push_back(col);
  }
  return {{"generators", g.generators()}, {"relations", rels}};
}

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(integer_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

// ------------------------------------------------------------------ Document

namespace {

template <class Map>
const typename Map::mapped_type& lookup(const Map& map, const std::string& name, const std::string& kind) {
  auto it = map.find(name);
  if (it == map.end()) throw Error("UnknownEntity", "no " + kind + " named '" + name + "'");
  return it->second;
}

}  // namespace

const CategoryPtr& Document::category(const std::string& n) const { return lookup(categories, n, "category"); }
const Functor& Document::functor(const std::string& n) const { return lookup(functors, n, "functor"); }
const NatTransformation& Document::transformation(const std::string& n) const {
  return lookup(transformations, n, "transformation");
}
const Pretopology& Document::pretopology(const std::string& n) const {
  return lookup(pretopologies, n, "pretopology");
}
const AbEnrichment& Document::enrichment(const std::string& n) const { return lookup(enrichments, n, "enrichment"); }
const Presheaf& Document::presheaf(const std::string& n) const { return lookup(presheaves, n, "presheaf"); }
const PresheafMorphism& Document::presheaf_morphism(const std::string& n) const {
  return lookup(presheaf_morphisms, n, "presheaf morphism");
}

Document parse_document(const std::string& text, const LoadOptions& options) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), line_at(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  try {
    return Loader(text, options).run(root);
  } catch (const json::exception& e) {
    throw ParseError(e.what(), 1);
  }
}

Document load_document(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("FileNotFound", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str(), options);
}

std::string serialize_document(const Document& doc) {
  json root = json::object();
  json cats = json::array();
  for (const auto& [name, c] : doc.categories) {
    CategoryData d = c->to_data();
    json mors = json::array();
    for (const auto& m : d.morphisms) mors.push_back({{"id", m.id}, {"dom", m.dom}, {"cod", m.cod}});
    json comp = json::array();
    for (const auto& t : d.composition) comp.push_back({t[0], t[1], t[2]});
    cats.push_back({{"name", name},
                    {"objects", d.objects},
                    {"morphisms", mors},
                    {"identities", d.identities},
                    {"composition", comp}});
  }
  root["categories"] = cats;

  json funs = json::array();
  for (const auto& [name, f] : doc.functors) {
    const FinCategory& s = *f.source();
    const FinCategory& t = *f.target();
    json om = json::object(), mm = json::object();
    for (Obj x = 0; x < s.num_objects(); ++x) om[s.object_id(x)] = t.object_id(f(x));
    for (Mor m = 0; m < s.num_morphisms(); ++m) mm[s.morphism_id(m)] = t.morphism_id(f.map(m));
    funs.push_back({{"name", name}, {"source", s.name()}, {"target", t.name()}, {"objects", om}, {"morphisms", mm}});
  }
  root["functors"] = funs;

  json nats = json::array();
  for (const auto& [name, eta] : doc.transformations) {
    const FinCategory& s = *eta.from().source();
    json comps = json::object();
    for (Obj x = 0; x < s.num_objects(); ++x)
      comps[s.object_id(x)] = eta.from().target()->morphism_id(eta.component(x));
    nats.push_back({{"name", name}, {"from", eta.from().name()}, {"to", eta.to().name()}, {"components", comps}});
  }
  root["transformations"] = nats;

  json tops = json::array();
  for (const auto& [name, p] : doc.pretopologies) {
    const FinCategory& c = *p.base;
    json covers = json::object();
    for (Obj x = 0; x < c.num_objects(); ++x) {
      if (p.covers[x].empty()) continue;
      json fams = json::array();
      for (const auto& fam : p.covers[x]) {
        json members = json::array();
        for (Mor m : fam.members) members.push_back(c.morphism_id(m));
        fams.push_back({{"name", fam.name}, {"members", members}});
      }
      covers[c.object_id(x)] = fams;
    }
    tops.push_back({{"name", name}, {"category", c.name()}, {"covers", covers}});
  }
  root["pretopologies"] = tops;

  json ens = json::array();
  for (const auto& [name, e] : doc.enrichments) {
    const FinCategory& c = *e.base;
    const std::size_t m = c.num_morphisms();
    json add = json::array(), zero = json::array(), bips = json::array();
    for (Mor f = 0; f < c.num_morphisms(); ++f)
      for (Mor g = 0; g < c.num_morphisms(); ++g)
        if (Mor s = e.sum[f * m + g]; s != kNone)
          add.push_back({c.morphism_id(f), c.morphism_id(g), c.morphism_id(s)});
    for (Obj x = 0; x < c.num_objects(); ++x)
      for (Obj y = 0; y < c.num_objects(); ++y)
        if (Mor z = e.zero_of(x, y); z != kNone) zero.push_back({c.object_id(x), c.object_id(y), c.morphism_id(z)});
    for (const auto& b : e.biproducts)
      bips.push_back({{"left", c.object_id(b.left)},
                      {"right", c.object_id(b.right)},
                      {"sum", c.object_id(b.sum)},
                      {"in_left", c.morphism_id(b.in_left)},
                      {"in_right", c.morphism_id(b.in_right)},
                      {"out_left", c.morphism_id(b.out_left)},
                      {"out_right", c.morphism_id(b.out_right)}});
    ens.push_back({{"name", name}, {"category", c.name()}, {"addition", add}, {"zero", zero}, {"biproducts", bips}});
  }
  root["enrichments"] = ens;

  json pres = json::array();
  for (const auto& [name, mu] : doc.presheaves) {
    const FinCategory& c = *mu.base();
    json values = json::object(), res = json::object();
    for (Obj x = 0; x < c.num_objects(); ++x) values[c.object_id(x)] = group_json(mu.value(x));
    for (Mor f = 0; f < c.num_morphisms(); ++f) res[c.morphism_id(f)] = matrix_json(mu.restriction(f).matrix);
    pres.push_back({{"name", name}, {"site", mu.site.name}, {"values", values}, {"restrictions", res}});
  }
  root["presheaves"] = pres;

  json pms = json::array();
  for (const auto& [name, m] : doc.presheaf_morphisms) {
    const FinCategory& c = *m.from.base();
    json comps = json::object();
    for (Obj x = 0; x < c.num_objects(); ++x) comps[c.object_id(x)] = matrix_json(m.components[x].matrix);
    pms.push_back({{"name", name}, {"from", m.from.name}, {"to", m.to.name}, {"components", comps}});
  }
  root["presheaf_morphisms"] = pms;
  return root.dump(2) + "\n";
}

}  // namespace fixcat
