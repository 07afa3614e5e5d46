#include "fixcat/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "fixcat/document.hpp"
#include "fixcat/fixpoint.hpp"
#include "fixcat/generators.hpp"
#include "fixcat/limits.hpp"
#include "fixcat/nerve.hpp"
#include "fixcat/proptest.hpp"
#include "fixcat/sheaf.hpp"
#include "fixcat/site.hpp"
#include "json.hpp"

namespace fixcat::cli {

using json = nlohmann::ordered_json;

namespace {

struct Args {
  std::string doc;
  bool json_output = false;
  std::uint64_t seed = 1;
  int max_degree = 3;
  bool strict_membership = false;
  unsigned threads = 0;

  std::string category, functor, object, sigma, f, g;
  std::string transformation, from, to, left, right;
  std::string site, cover, enrichment, first, second;
  std::vector<std::string> presheaves, suites;
  int max_dim = -1;
  bool coslice = false;
  bool cobase = false;
  double scale = 1.0;
};

struct Report {
  json body = json::object();
  bool pass = true;
};

// Codes that describe unusable input rather than a failed property.
const std::set<std::string>& input_codes() {
  static const std::set<std::string> codes{
      "ParseError",     "ReferenceError", "UnknownEntity", "UnknownObject",   "UnknownMorphism",
      "UnknownCover",   "UnknownSuite",   "FileNotFound",  "Usage",           "NotEndofunctor",
      "NotACospan",     "Mismatch",       "Malformed",     "DegreeOutOfRange", "NerveNotFinite",
      "NotExactInput",  "NotNaturalIso",  "NotFixedPointCandidate", "TooLarge"};
  return codes;
}

[[noreturn]] void usage(const std::string& message) { throw Error("Usage", message); }

const std::string& need(const std::string& value, const std::string& flag) {
  if (value.empty()) usage("missing required option " + flag);
  return value;
}

// ------------------------------------------------------------ rendering

json integer(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

json invariants(const AbGroupInvariants& g) {
  json out = json::array();
  for (const Integer& d : g.factors) out.push_back(integer(d));
  return out;
}

json rational(const Rational& q) {
  if (q.get_den() == 1) return integer(q.get_num());
  return q.get_str();
}

json ids(const FinCategory& c, const std::vector<Mor>& ms) {
  json out = json::array();
  for (Mor m : ms) out.push_back(m == kNone ? json(nullptr) : json(c.morphism_id(m)));
  return out;
}

json object_ids(const FinCategory& c, const std::vector<Obj>& xs) {
  json out = json::array();
  for (Obj x : xs) out.push_back(c.object_id(x));
  return out;
}

json validation(const ValidationReport& r) {
  json out = json::object();
  out["ok"] = r.ok;
  if (!r.ok) {
    out["code"] = r.code;
    out["message"] = r.message;
    out["witness"] = r.witness;
  }
  return out;
}

json covers_json(const Pretopology& p) {
  const FinCategory& c = *p.base;
  json out = json::object();
  for (Obj x = 0; x < c.num_objects(); ++x) {
    json fams = json::array();
    for (const CoveringFamily& fam : p.covers[x]) fams.push_back({{"name", fam.name}, {"members", ids(c, fam.members)}});
    out[c.object_id(x)] = fams;
  }
  return out;
}

bool scalar(const json& v) { return !v.is_object() && !v.is_array(); }

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

std::string inline_text(const json& v) {
  if (scalar(v)) return scalar_text(v);
  std::string s = v.is_array() ? "[" : "{";
  bool first = true;
  for (auto it = v.begin(); it != v.end(); ++it) {
    if (!first) s += ", ";
    first = false;
    if (v.is_object()) s += it.key() + ": ";
    s += inline_text(*it);
  }
  return s + (v.is_array() ? "]" : "}");
}

bool shallow(const json& v) {
  if (scalar(v)) return true;
  return std::all_of(v.begin(), v.end(), [](const json& e) { return scalar(e); }) ||
         (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_array() && shallow(e); }));
}

void render(std::ostream& out, const json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      const json& e = *it;
      if (shallow(e) && inline_text(e).size() <= 100) {
        out << pad << it.key() << ": " << inline_text(e) << "\n";
      } else {
        out << pad << it.key() << ":\n";
        render(out, e, indent + 2);
      }
    }
  } else if (v.is_array()) {
    for (const json& e : v) {
      if (shallow(e) || inline_text(e).size() <= 100) {
        out << pad << "- " << inline_text(e) << "\n";
      } else {
        out << pad << "-\n";
        render(out, e, indent + 2);
      }
    }
  } else {
    out << pad << scalar_text(v) << "\n";
  }
}

// ------------------------------------------------------------ context

class Context {
 public:
  explicit Context(const Args& a) : args(a) {}

  const Document& doc() {
    if (!doc_) {
      if (args.doc.empty()) usage("no document given (positional argument or --doc)");
      LoadOptions opts;
      opts.membership = membership();
      doc_ = load_document(args.doc, opts);
    }
    return *doc_;
  }

  Membership membership() const {
    return args.strict_membership ? Membership::Strict : Membership::UpToIsomorphism;
  }
  std::size_t max_degree() const {
    if (args.max_degree < 0) usage("--max-degree must be non-negative");
    return static_cast<std::size_t>(args.max_degree);
  }

  const Functor& functor() { return doc().functor(need(args.functor, "--functor")); }
  const CategoryPtr& category() { return doc().category(need(args.category, "--category")); }

  // The category named by --category, or else the source of --functor.
  CategoryPtr category_or_functor_source() {
    if (!args.category.empty()) return category();
    return functor().source();
  }

  Obj object_in(const FinCategory& c, const std::string& flag, const std::string& value) {
    return c.object(need(value, flag));
  }
  Mor morphism_in(const FinCategory& c, const std::string& flag, const std::string& value) {
    return c.morphism(need(value, flag));
  }

  const Functor& endofunctor() {
    const Functor& f = functor();
    f.require_endofunctor();
    return f;
  }

  const Args& args;

 private:
  std::optional<Document> doc_;
};

void require_on(const Functor& f, const CategoryPtr& base, const std::string& what) {
  if (!same_category(f.source(), base) || !same_category(f.target(), base))
    throw Error("Mismatch", "functor " + f.name() + " is not an endofunctor of the category under " + what);
}

const char* kPullbackChoice = "lexicographically least (vertex, left, right) among universal cones";
const char* kPushoutChoice = "lexicographically least (vertex, left, right) among couniversal cocones";

// ------------------------------------------------------------ commands

Report cmd_validate(Context& cx) {
  const Document& d = cx.doc();
  Report r;
  auto names = [](const auto& map) {
    json out = json::array();
    for (const auto& [k, v] : map) out.push_back(k);
    return out;
  };
  json entities = json::object();
  entities["categories"] = names(d.categories);
  entities["functors"] = names(d.functors);
  entities["transformations"] = names(d.transformations);
  entities["pretopologies"] = names(d.pretopologies);
  entities["enrichments"] = names(d.enrichments);
  entities["presheaves"] = names(d.presheaves);
  entities["presheaf_morphisms"] = names(d.presheaf_morphisms);
  json counts = json::object();
  for (auto it = entities.begin(); it != entities.end(); ++it) counts[it.key()] = it->size();
  json cats = json::object();
  for (const auto& [name, c] : d.categories)
    cats[name] = {{"objects", c->num_objects()}, {"morphisms", c->num_morphisms()}};
  r.body["counts"] = counts;
  r.body["entities"] = entities;
  r.body["categories"] = cats;
  return r;
}

Report cmd_fixpoints(Context& cx) {
  const Functor& f = cx.endofunctor();
  const FinCategory& c = *f.source();
  Report r;
  json points = json::array();
  for (const FixedPoint& p : fixed_points(f))
    points.push_back({{"object", c.object_id(p.object)}, {"iso", c.morphism_id(p.iso)}, {"id", fixed_point_id(c, p)}});
  r.body["functor"] = f.name();
  r.body["count"] = points.size();
  r.body["fixed_points"] = points;
  r.body["provenance"] = {{"witnesses", "every isomorphism X -> F(X), ordered by object then morphism id"}};
  return r;
}

Report cmd_strict(Context& cx) {
  const Functor& f = cx.endofunctor();
  Report r;
  auto xs = strict_fixed_points(f);
  r.body["functor"] = f.name();
  r.body["count"] = xs.size();
  r.body["strict_fixed_points"] = object_ids(*f.source(), xs);
  return r;
}

Report cmd_fixcat_build(Context& cx) {
  const Functor& f = cx.endofunctor();
  FixCategoryResult sf = fix_category(f);
  const FinCategory& s = *sf.carrier;
  Report r;
  json morphisms = json::array();
  for (Mor m = 0; m < s.num_morphisms(); ++m) morphisms.push_back(s.morphism_id(m));
  const bool faithful = gen::is_faithful(sf.forgetful);
  const ValidationReport forgetful = validate_functor(sf.forgetful);
  r.body["functor"] = f.name();
  r.body["objects"] = s.object_ids();
  r.body["morphism_count"] = s.num_morphisms();
  r.body["morphisms"] = morphisms;
  r.body["forgetful_valid"] = forgetful.ok;
  r.body["forgetful_faithful"] = faithful;
  r.body["provenance"] = {{"object_ids", "(X|alpha)"}, {"morphism_ids", "f:(X|alpha)>(Y|beta)"}};
  r.pass = faithful && forgetful.ok;
  return r;
}

Report cmd_transport(Context& cx) {
  const Args& a = cx.args;
  NatTransformation eta;
  if (!a.transformation.empty()) {
    eta = cx.doc().transformation(a.transformation);
  } else {
    const Functor& f = cx.doc().functor(need(a.from, "--from or --transformation"));
    const Functor& g = cx.doc().functor(need(a.to, "--to"));
    auto found = functors_isomorphic(f, g);
    Report r;
    r.body["from"] = f.name();
    r.body["to"] = g.name();
    if (!found) {
      r.body["isomorphic"] = false;
      r.pass = false;
      return r;
    }
    eta = *found;
    eta.set_name("search");
  }
  if (!is_nat_iso(eta)) throw Error("NotNaturalIso", "transformation " + eta.name() + " is not a natural isomorphism");
  TransportResult t = transport(eta);
  const FinCategory& src = *t.source.carrier;
  const FinCategory& tgt = *t.target.carrier;
  Report r;
  json objects = json::object();
  for (Obj x = 0; x < src.num_objects(); ++x) objects[src.object_id(x)] = tgt.object_id(t.forward(x));
  r.body["transformation"] = eta.name();
  r.body["components"] = ids(*eta.from().target(), eta.components());
  r.body["source"] = {{"objects", src.num_objects()}, {"morphisms", src.num_morphisms()}};
  r.body["target"] = {{"objects", tgt.num_objects()}, {"morphisms", tgt.num_morphisms()}};
  r.body["object_map"] = objects;
  r.body["round_trip_identity"] = t.round_trip_identity;
  r.pass = t.round_trip_identity;
  return r;
}

Report cmd_homcolim(Context& cx) {
  const Functor& f = cx.endofunctor();
  const FinCategory& c = *f.source();
  Obj x = cx.object_in(c, "--object", cx.args.object);
  ColimitReport col = hom_colimit(f, x);
  Report r;
  json classes = json::array();
  for (const auto& cls : col.classes) {
    json members = json::array();
    for (const auto& [i, m] : cls) members.push_back({c.object_id(i), c.morphism_id(m)});
    classes.push_back(members);
  }
  r.body["functor"] = f.name();
  r.body["object"] = c.object_id(x);
  r.body["size"] = col.size;
  r.body["classes"] = classes;
  r.body["provenance"] = {{"index_category", "the category itself, one transition phi -> F(f) o phi per f: Xi -> Xj"},
                          {"interpretation", "index category not fixed by the source statement"}};
  return r;
}

std::vector<std::string> simplex_names(const FinCategory& c, const std::vector<Simplex>& ss) {
  std::vector<std::string> out;
  for (const Simplex& s : ss) {
    if (s.arrows.empty()) {
      out.push_back(c.object_id(s.start));
      continue;
    }
    std::string name;
    for (Mor m : s.arrows) name += (name.empty() ? "" : ",") + c.morphism_id(m);
    out.push_back(name);
  }
  return out;
}

Report cmd_nerve(Context& cx) {
  CategoryPtr c = cx.category_or_functor_source();
  const int n = cx.args.max_dim >= 0 ? cx.args.max_dim : static_cast<int>(cx.max_degree());
  NerveTruncation nv = nerve(c, n);
  LoopFreeReport lf = is_loop_free(*c);
  Report r;
  json simplices = json::array();
  for (const auto& deg : nv.simplices) simplices.push_back(simplex_names(*c, deg));
  r.body["category"] = c->name();
  r.body["max_dim"] = n;
  r.body["counts"] = nv.counts();
  r.body["exact"] = nv.exact;
  r.body["loop_free"] = lf.loop_free;
  if (lf.loop_free) r.body["longest_chain"] = lf.longest_chain;
  r.body["simplices"] = simplices;
  return r;
}

Report cmd_homology(Context& cx) {
  CategoryPtr c = cx.category_or_functor_source();
  const int n = cx.args.max_dim >= 0 ? cx.args.max_dim : static_cast<int>(cx.max_degree());
  NerveTruncation nv = nerve(c, n + 1);
  ChainComplexZ ch = chain_complex(nv);
  Report r;
  json groups = json::array();
  for (int k = 0; k <= n; ++k) groups.push_back(invariants(homology(ch, k)));
  r.body["category"] = c->name();
  r.body["max_degree"] = n;
  r.body["homology"] = groups;
  r.body["exact"] = nv.exact;
  if (!nv.exact) r.body["warning"] = "the nerve has simplices past the truncation; groups are of the truncated complex";
  r.body["provenance"] = {{"chains", "normalized, degenerate faces sent to zero"},
                          {"signs", "(-1)^i on the i-th face"}};
  return r;
}

Report cmd_lefschetz(Context& cx) {
  const Functor& f = cx.endofunctor();
  LefschetzReport l = lefschetz(f);
  Report r;
  json chain = json::array(), hom = json::array();
  for (const Integer& t : l.chain_traces) chain.push_back(integer(t));
  for (const Rational& t : l.homology_traces) hom.push_back(rational(t));
  r.body["functor"] = f.name();
  r.body["lefschetz"] = integer(l.chain_level);
  r.body["homology_level"] = rational(l.homology_level);
  r.body["chain_traces"] = chain;
  r.body["homology_traces"] = hom;
  r.body["hopf_equal"] = l.equal;
  r.pass = l.equal;
  return r;
}

Report cmd_certify(Context& cx) {
  const Functor& f = cx.endofunctor();
  CertificateReport c = cx.args.transformation.empty()
                            ? strict_certificate(f)
                            : strict_certificate(f, cx.doc().transformation(cx.args.transformation));
  Report r;
  r.body["functor"] = f.name();
  r.body["lefschetz"] = integer(c.lefschetz);
  r.body["hopf_equal"] = c.hopf_equal;
  r.body["has_initial"] = c.has_initial;
  r.body["prediction"] = c.prediction;
  r.body["actual"] = c.actual;
  r.body["strict_fixed_points"] = object_ids(*f.source(), strict_fixed_points(f));
  r.body["consistent"] = c.consistent;
  r.pass = c.consistent && c.hopf_equal;
  if (c.has_other) {
    const NatTransformation& eta = cx.doc().transformation(cx.args.transformation);
    r.body["other"] = {{"functor", eta.to().name()},
                       {"traces_match", c.traces_match},
                       {"prediction", c.other_prediction},
                       {"actual", c.other_actual},
                       {"consistent", c.other_consistent}};
    r.pass = r.pass && c.traces_match && c.other_consistent;
  }
  return r;
}

Report cmd_pullback(Context& cx, bool push) {
  const FinCategory& c = *cx.category();
  Mor f = cx.morphism_in(c, "--f", cx.args.f);
  Mor g = cx.morphism_in(c, "--g", cx.args.g);
  Report r;
  r.body["category"] = c.name();
  r.body["f"] = c.morphism_id(f);
  r.body["g"] = c.morphism_id(g);
  if (push) {
    if (c.dom(f) != c.dom(g)) throw Error("NotACospan", "f and g do not share a domain");
    auto po = find_pushout(c, f, g);
    r.body["exists"] = po.has_value();
    if (po)
      r.body["pushout"] = {{"vertex", c.object_id(po->vertex)},
                           {"inj_left", c.morphism_id(po->inj_left)},
                           {"inj_right", c.morphism_id(po->inj_right)}};
    r.body["provenance"] = {{"choice", kPushoutChoice}};
    r.pass = po.has_value();
  } else {
    auto pb = find_pullback(c, f, g);
    r.body["exists"] = pb.has_value();
    if (pb)
      r.body["pullback"] = {{"vertex", c.object_id(pb->vertex)},
                            {"proj_left", c.morphism_id(pb->proj_left)},
                            {"proj_right", c.morphism_id(pb->proj_right)}};
    r.body["provenance"] = {{"choice", kPullbackChoice}};
    r.pass = pb.has_value();
  }
  return r;
}

json slice_json(const SliceCategory& s) {
  const FinCategory& k = *s.carrier;
  json morphisms = json::array();
  for (Mor m = 0; m < k.num_morphisms(); ++m) morphisms.push_back(k.morphism_id(m));
  return {{"apex", s.base->object_id(s.apex)},
          {"kind", s.coslice ? "coslice" : "slice"},
          {"objects", k.object_ids()},
          {"morphism_count", k.num_morphisms()},
          {"morphisms", morphisms}};
}

Report cmd_slice(Context& cx) {
  const CategoryPtr& c = cx.category();
  Obj x = cx.object_in(*c, "--object", cx.args.object);
  SliceCategory s = cx.args.coslice ? coslice(c, x) : slice(c, x);
  Report r;
  r.body["category"] = c->name();
  r.body["slice"] = slice_json(s);
  r.body["provenance"] = {{"object_ids", "the base morphism id"}, {"morphism_ids", "(h;source;target)"}};
  return r;
}

json slice_functor_json(const SliceFunctor& sf) {
  const FinCategory& s = *sf.source.carrier;
  const FinCategory& t = *sf.target.carrier;
  json objects = json::object();
  for (Obj x = 0; x < s.num_objects(); ++x) objects[s.object_id(x)] = t.object_id(sf.functor(x));
  return {{"source_apex", sf.source.base->object_id(sf.source.apex)},
          {"target_apex", sf.target.base->object_id(sf.target.apex)},
          {"object_map", objects}};
}

Report cmd_basechange(Context& cx) {
  const CategoryPtr& c = cx.category();
  Mor sigma = cx.morphism_in(*c, "--sigma", cx.args.sigma);
  SliceFunctor sf = cx.args.cobase ? cobase_change(c, sigma) : base_change(c, sigma);
  ValidationReport v = validate_functor(sf.functor);
  EquivalenceReport e = is_equivalence(sf.functor);
  Report r;
  r.body["category"] = c->name();
  r.body["sigma"] = c->morphism_id(sigma);
  r.body["kind"] = cx.args.cobase ? "cobase_change" : "base_change";
  r.body["functor"] = slice_functor_json(sf);
  r.body["valid"] = validation(v);
  r.body["equivalence"] = e.equivalence();
  r.body["provenance"] = {{"choice", cx.args.cobase ? kPushoutChoice : kPullbackChoice}};
  r.pass = v.ok;
  return r;
}

json adjunction_json(const AdjunctionReport& a, const Functor& left, const Functor& right) {
  json out = {{"left", left.name()}, {"right", right.name()}, {"found", a.found}};
  if (a.found) {
    out["unit"] = ids(*left.source(), a.unit);
    out["counit"] = ids(*right.source(), a.counit);
  }
  return out;
}

Report cmd_adjoint(Context& cx) {
  Report r;
  if (!cx.args.sigma.empty()) {
    const CategoryPtr& c = cx.category();
    Mor sigma = cx.morphism_in(*c, "--sigma", cx.args.sigma);
    SliceFunctor post = postcompose(c, sigma);
    SliceFunctor tau = base_change(c, sigma);
    SliceFunctor cob = cobase_change(c, sigma);
    SliceFunctor pre = precompose(c, sigma);
    post.functor.set_name("postcompose");
    tau.functor.set_name("base_change");
    cob.functor.set_name("cobase_change");
    pre.functor.set_name("precompose");
    AdjunctionReport a1 = check_adjunction(post.functor, tau.functor);
    AdjunctionReport a2 = check_adjunction(cob.functor, pre.functor);
    r.body["category"] = c->name();
    r.body["sigma"] = c->morphism_id(sigma);
    r.body["slice"] = adjunction_json(a1, post.functor, tau.functor);
    r.body["coslice"] = adjunction_json(a2, cob.functor, pre.functor);
    r.pass = a1.found && a2.found;
    return r;
  }
  const Functor& left = cx.doc().functor(need(cx.args.left, "--left (or --sigma)"));
  const Functor& right = cx.doc().functor(need(cx.args.right, "--right"));
  if (!same_category(left.source(), right.target()) || !same_category(left.target(), right.source()))
    throw Error("Mismatch", "functors " + left.name() + " and " + right.name() + " are not opposed");
  AdjunctionReport a = check_adjunction(left, right);
  r.body["adjunction"] = adjunction_json(a, left, right);
  r.pass = a.found;
  return r;
}

Report cmd_equiv(Context& cx) {
  const Functor& f = cx.functor();
  EquivalenceReport e = is_equivalence(f);
  Report r;
  r.body["functor"] = f.name();
  r.body["fully_faithful"] = e.fully_faithful;
  r.body["essentially_surjective"] = e.essentially_surjective;
  r.body["equivalence"] = e.equivalence();
  r.pass = e.equivalence();
  return r;
}

Report cmd_balanced(Context& cx) {
  const FinCategory& c = *cx.category();
  BalancedReport b = is_balanced(c);
  Report r;
  r.body["category"] = c.name();
  r.body["balanced"] = b.balanced;
  if (b.witness) r.body["witness"] = c.morphism_id(*b.witness);
  r.pass = b.balanced;
  return r;
}

Report cmd_criterion(Context& cx) {
  const Functor& f = cx.endofunctor();
  const FinCategory& c = *f.source();
  Obj x = cx.object_in(c, "--object", cx.args.object);
  Mor sigma = cx.morphism_in(c, "--sigma", cx.args.sigma);
  CriterionReport k = fixpoint_criterion(f, x, sigma);
  Report r;
  r.body["functor"] = f.name();
  r.body["object"] = c.object_id(x);
  r.body["sigma"] = c.morphism_id(sigma);
  r.body["sigma_iso"] = k.sigma_iso;
  r.body["tau_equiv"] = k.tau_equiv;
  r.body["s_equiv"] = k.s_equiv;
  r.body["balanced"] = k.balanced;
  r.body["forward_ok"] = k.forward_ok;
  r.body["biconditional_ok"] = k.biconditional_ok;
  r.body["provenance"] = {{"converse", "asserted only for balanced categories"}};
  r.pass = k.forward_ok && k.biconditional_ok;
  return r;
}

json membership_json(Membership m) {
  return m == Membership::Strict ? "strict morphism sets" : "sets up to isomorphism over the base object";
}

Report cmd_site_check(Context& cx) {
  const Pretopology& p = cx.doc().pretopology(need(cx.args.site, "--site"));
  ValidationReport v = check_pretopology(p, cx.membership());
  Report r;
  r.body["site"] = p.name;
  r.body["check"] = validation(v);
  r.body["covers"] = covers_json(p);
  r.body["provenance"] = {{"membership", membership_json(cx.membership())}, {"pullback", kPullbackChoice}};
  r.pass = v.ok;
  return r;
}

Report cmd_sitemorph(Context& cx) {
  const Pretopology& p = cx.doc().pretopology(need(cx.args.site, "--site"));
  const Functor& f = cx.functor();
  require_on(f, p.base, "site " + p.name);
  ValidationReport v = check_site_morphism(f, p, cx.membership());
  Report r;
  r.body["functor"] = f.name();
  r.body["site"] = p.name;
  r.body["check"] = validation(v);
  r.body["provenance"] = {{"membership", cx.membership() == Membership::Strict
                                             ? "images matched member for member, literal morphisms"
                                             : "images matched member for member, up to isomorphism"}};
  r.pass = v.ok;
  return r;
}

Report cmd_fix_site(Context& cx) {
  const Pretopology& p = cx.doc().pretopology(need(cx.args.site, "--site"));
  const Functor& f = cx.functor();
  require_on(f, p.base, "site " + p.name);
  Report r;
  r.body["functor"] = f.name();
  r.body["site"] = p.name;
  ValidationReport morph = check_site_morphism(f, p, cx.membership());
  r.body["site_morphism"] = validation(morph);
  if (!morph.ok) {
    r.pass = false;
    return r;
  }
  FixCategoryResult sf = fix_category(f);
  Pretopology induced = induced_fix_pretopology(f, p, sf, cx.membership());
  ValidationReport v = check_pretopology(induced, cx.membership());
  r.body["check"] = validation(v);
  r.body["covers"] = covers_json(induced);
  r.pass = v.ok;
  return r;
}

Report cmd_fix_additive(Context& cx) {
  const AbEnrichment& e = cx.doc().enrichment(need(cx.args.enrichment, "--enrichment"));
  const Functor& f = cx.functor();
  require_on(f, e.base, "the enrichment");
  Report r;
  r.body["functor"] = f.name();
  r.body["enrichment"] = cx.args.enrichment;
  ValidationReport in = check_additive(e);
  ValidationReport fa = check_additive_functor(f, e);
  r.body["input"] = validation(in);
  r.body["functor_additive"] = validation(fa);
  if (!in.ok || !fa.ok) {
    r.pass = false;
    return r;
  }
  FixCategoryResult sf = fix_category(f);
  AbEnrichment out = fix_additive(f, e, sf);
  ValidationReport v = check_additive(out);
  const FinCategory& s = *sf.carrier;
  json zero = nullptr;
  if (auto z = zero_object(out)) zero = s.object_id(*z);
  json bips = json::array();
  for (const Biproduct& b : out.biproducts)
    bips.push_back({{"left", s.object_id(b.left)},
                    {"right", s.object_id(b.right)},
                    {"sum", s.object_id(b.sum)},
                    {"in_left", s.morphism_id(b.in_left)},
                    {"in_right", s.morphism_id(b.in_right)},
                    {"out_left", s.morphism_id(b.out_left)},
                    {"out_right", s.morphism_id(b.out_right)}});
  r.body["objects"] = s.num_objects();
  r.body["morphisms"] = s.num_morphisms();
  r.body["zero_object"] = zero;
  r.body["biproducts"] = bips;
  r.body["check"] = validation(v);
  r.body["provenance"] = {{"biproducts", "(X+Y, sigma^-1 o (alpha+beta)) for each listed biproduct of the input"}};
  r.pass = v.ok;
  return r;
}

const Presheaf& the_presheaf(Context& cx) {
  if (cx.args.presheaves.size() != 1) usage("expected exactly one --presheaf");
  const Presheaf& mu = cx.doc().presheaf(cx.args.presheaves.front());
  if (!cx.args.site.empty() && cx.args.site != mu.site.name)
    throw Error("Mismatch", "presheaf " + mu.name + " lives on site " + mu.site.name + ", not " + cx.args.site);
  return mu;
}

Report cmd_sheaf_check(Context& cx) {
  const Presheaf& mu = the_presheaf(cx);
  SheafReport s = is_sheaf(mu);
  Report r;
  r.body["presheaf"] = mu.name;
  r.body["site"] = mu.site.name;
  r.body["sheaf"] = s.sheaf;
  if (!s.sheaf)
    r.body["witness"] = {{"object", mu.base()->object_id(s.object)}, {"cover", s.cover}, {"reason", s.reason}};
  r.pass = s.sheaf;
  return r;
}

json cech_provenance(std::size_t n) {
  return {{"fiber_products", "left-associated canonical pullbacks"},
          {"tuples", "all of A^(q+1), repetitions included, lexicographic"},
          {"truncation", n}};
}

Report cmd_cech(Context& cx) {
  const Presheaf& mu = the_presheaf(cx);
  const std::string& name = need(cx.args.cover, "--cover");
  Obj x = mu.site.cover_object(name);
  const CoveringFamily& fam = mu.site.cover(x, name);
  const std::size_t n = cx.max_degree();
  CechComplex cc = cech_complex(*mu.base(), fam.members, mu, n);
  Report r;
  json groups = json::array(), ranks = json::array();
  for (std::size_t k = 0; k <= n; ++k) groups.push_back(invariants(cech_cohomology(cc, k)));
  for (const auto& t : cc.tuples) ranks.push_back(t.size());
  r.body["presheaf"] = mu.name;
  r.body["site"] = mu.site.name;
  r.body["object"] = mu.base()->object_id(x);
  r.body["cover"] = name;
  r.body["members"] = ids(*mu.base(), fam.members);
  r.body["tuples_per_degree"] = ranks;
  r.body["cohomology"] = groups;
  r.body["provenance"] = cech_provenance(n);
  return r;
}

Report cmd_flabby(Context& cx) {
  const Presheaf& mu = the_presheaf(cx);
  const std::size_t n = cx.max_degree();
  FlabbyReport fl = is_flabby(mu, n);
  Report r;
  r.body["presheaf"] = mu.name;
  r.body["flabby"] = fl.flabby;
  r.body["max_degree"] = fl.max_degree;
  if (!fl.flabby)
    r.body["witness"] = {{"object", mu.base()->object_id(fl.object)},
                         {"cover", fl.cover},
                         {"degree", fl.degree},
                         {"group", invariants(fl.group)}};
  r.body["provenance"] = cech_provenance(n);
  r.pass = fl.flabby;
  return r;
}

Report cmd_compare(Context& cx) {
  const Presheaf& mu = the_presheaf(cx);
  const Functor& f = cx.functor();
  require_on(f, mu.base(), "presheaf " + mu.name);
  const std::string& name = need(cx.args.cover, "--cover");
  Obj x = mu.site.cover_object(name);
  const CoveringFamily& fam = mu.site.cover(x, name);
  const std::size_t n = cx.max_degree();
  Report r;
  r.body["presheaf"] = mu.name;
  r.body["functor"] = f.name();
  r.body["cover"] = name;
  ValidationReport morph = check_site_morphism(f, mu.site, cx.membership());
  r.body["site_morphism"] = validation(morph);
  if (!morph.ok) {
    r.pass = false;
    return r;
  }
  ComparisonReport c = comparison_iso(fam.members, mu, f, n);
  json pulled = json::array(), image = json::array();
  for (const auto& g : c.pulled) pulled.push_back(invariants(g));
  for (const auto& g : c.image) image.push_back(invariants(g));
  r.body["all_iso"] = c.all_iso;
  r.body["ladder_commutes"] = c.ladder_commutes;
  r.body["pulled"] = pulled;
  r.body["image"] = image;
  r.body["cohomology_matches"] = c.cohomology_matches;
  r.body["provenance"] = cech_provenance(n);
  r.pass = c.all_iso && c.ladder_commutes && c.cohomology_matches;
  return r;
}

Report cmd_cofix(Context& cx) {
  const Functor& f = cx.endofunctor();
  const FinCategory& c = *f.source();
  Obj x = cx.object_in(c, "--object", cx.args.object);
  std::vector<Presheaf> tests;
  if (cx.args.presheaves.empty()) {
    for (const auto& [name, mu] : cx.doc().presheaves)
      if (same_category(mu.base(), f.source())) tests.push_back(mu);
  } else {
    for (const std::string& name : cx.args.presheaves) {
      const Presheaf& mu = cx.doc().presheaf(name);
      require_on(f, mu.base(), "presheaf " + name);
      tests.push_back(mu);
    }
  }
  if (tests.empty()) usage("no test presheaves on the category of " + f.name());
  const std::size_t n = cx.max_degree();
  Report r;
  r.body["functor"] = f.name();
  r.body["object"] = c.object_id(x);
  json morphs = json::object();
  bool morph_ok = true;
  std::set<std::string> seen;
  for (const Presheaf& mu : tests)
    if (seen.insert(mu.site.name).second) {
      ValidationReport v = check_site_morphism(f, mu.site, cx.membership());
      morphs[mu.site.name] = validation(v);
      morph_ok = morph_ok && v.ok;
    }
  r.body["site_morphism"] = morphs;
  if (!morph_ok) {
    r.pass = false;
    return r;
  }
  CechFixedPointReport k = cech_fixed_point_report(x, f, tests, n);
  json entries = json::array();
  for (const auto& e : k.entries)
    entries.push_back({{"presheaf", e.presheaf},
                       {"cover", e.cover},
                       {"degree", e.degree},
                       {"direct", invariants(e.direct)},
                       {"pulled", invariants(e.pulled)},
                       {"image", invariants(e.image)}});
  r.body["verdict_kind"] = "Cech-cohomological fixed point (relative to the test presheaves and the degree bound)";
  r.body["declared"] = k.declared;
  r.body["pulled_agrees"] = k.pulled_agrees;
  r.body["comparison_ok"] = k.comparison_ok;
  r.body["bridge_ok"] = k.bridge_ok;
  r.body["entries"] = entries;
  r.body["provenance"] = cech_provenance(n);
  r.pass = k.declared && k.comparison_ok && k.bridge_ok;
  return r;
}

Report cmd_exact(Context& cx) {
  const Functor& f = cx.endofunctor();
  const PresheafMorphism& m1 = cx.doc().presheaf_morphism(need(cx.args.first, "--first"));
  const PresheafMorphism& m2 = cx.doc().presheaf_morphism(need(cx.args.second, "--second"));
  require_on(f, m1.from.base(), "presheaf morphism " + m1.name);
  ExactnessReport e = check_exactness_preserved(f, m1, m2);
  Report r;
  r.body["functor"] = f.name();
  r.body["first"] = m1.name;
  r.body["second"] = m2.name;
  r.body["preserved"] = e.preserved;
  if (!e.preserved) r.body["witness"] = {{"object", f.source()->object_id(e.object)}, {"reason", e.reason}};
  r.body["provenance"] = {{"exactness", "pointwise on presheaf values"}};
  r.pass = e.preserved;
  return r;
}

unsigned thread_count(const Args& a) {
  if (a.threads > 0) return a.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

Report cmd_proptest(Context& cx) {
  proptest::Options opts;
  opts.seed = cx.args.seed;
  opts.threads = thread_count(cx.args);
  opts.scale = cx.args.scale;
  opts.suites = cx.args.suites;
  Report r;
  json suites = json::array();
  for (const proptest::SuiteResult& s : proptest::run(opts)) {
    json examples = json::array();
    for (const auto& e : s.examples) examples.push_back({{"case", e.case_index}, {"detail", e.detail}});
    suites.push_back({{"suite", s.name},
                      {"property", s.property},
                      {"cases", s.cases},
                      {"checks", s.checks},
                      {"failed", s.failed},
                      {"verdict", s.passed() ? "pass" : "fail"},
                      {"examples", examples}});
    r.pass = r.pass && s.passed();
  }
  r.body["seed"] = cx.args.seed;
  r.body["scale"] = cx.args.scale;
  r.body["suites"] = suites;
  return r;
}

// ------------------------------------------------------------ table

struct CommandSpec {
  std::string name;
  std::string help;
  std::function<Report(Context&)> run;
  std::vector<std::string> options;
};

const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> table{
      {"validate", "load and validate every entity", cmd_validate, {}},
      {"fixpoints", "all fixed points (X, alpha) of an endofunctor", cmd_fixpoints, {"functor"}},
      {"strict", "strict fixed points F(X) = X", cmd_strict, {"functor"}},
      {"fixcat-build", "the category S(F) and its forgetful functor", cmd_fixcat_build, {"functor"}},
      {"transport", "transport S(F) -> S(F') along a natural isomorphism", cmd_transport,
       {"transformation", "from", "to"}},
      {"homcolim", "colimit of Hom(X, F(-)) over the category", cmd_homcolim, {"functor", "object"}},
      {"nerve", "truncated nerve simplex counts", cmd_nerve, {"category", "functor", "max-dim"}},
      {"homology", "integral homology of the nerve", cmd_homology, {"category", "functor", "max-dim"}},
      {"lefschetz", "Lefschetz number of the induced nerve map", cmd_lefschetz, {"functor"}},
      {"certify", "strict fixed point certificate", cmd_certify, {"functor", "transformation"}},
      {"pullback", "canonical pullback of a cospan", [](Context& c) { return cmd_pullback(c, false); },
       {"category", "f", "g"}},
      {"pushout", "canonical pushout of a span", [](Context& c) { return cmd_pullback(c, true); },
       {"category", "f", "g"}},
      {"slice", "slice or coslice category", cmd_slice, {"category", "object", "coslice"}},
      {"basechange", "base change (or cobase change) functor along sigma", cmd_basechange,
       {"category", "sigma", "cobase"}},
      {"adjoint", "adjunction check", cmd_adjoint, {"category", "sigma", "left", "right"}},
      {"equiv", "equivalence check", cmd_equiv, {"functor"}},
      {"balanced", "balancedness check", cmd_balanced, {"category"}},
      {"criterion", "fixed point criterion through slice equivalences", cmd_criterion,
       {"functor", "object", "sigma"}},
      {"site-check", "pretopology axioms", cmd_site_check, {"site"}},
      {"sitemorph", "site morphism check", cmd_sitemorph, {"functor", "site"}},
      {"fix-site", "pretopology induced on S(F)", cmd_fix_site, {"functor", "site"}},
      {"fix-additive", "additive structure induced on S(F)", cmd_fix_additive, {"functor", "enrichment"}},
      {"sheaf-check", "sheaf condition on every listed cover", cmd_sheaf_check, {"presheaf", "site"}},
      {"cech", "Cech cohomology of a presheaf on a cover", cmd_cech, {"presheaf", "site", "cover"}},
      {"flabby", "degree-truncated flabbiness scan", cmd_flabby, {"presheaf", "site"}},
      {"compare", "Cech comparison maps along a site morphism", cmd_compare,
       {"presheaf", "site", "cover", "functor"}},
      {"cofix", "Cech-cohomological fixed point report", cmd_cofix, {"functor", "object", "presheaf"}},
      {"exact", "pointwise exactness preserved by pullback", cmd_exact, {"functor", "first", "second"}},
      {"proptest", "randomized property suites", cmd_proptest, {"suite", "scale"}},
  };
  return table;
}

void add_options(CLI::App* sub, const CommandSpec& spec, Args& a) {
  sub->add_option("doc,--doc", a.doc, "workbench document (JSON)");
  sub->add_flag("--json", a.json_output, "emit one JSON report object");
  sub->add_option("--seed", a.seed, "seed for generators");
  sub->add_option("--max-degree", a.max_degree, "degree bound")->capture_default_str();
  sub->add_flag("--strict-membership", a.strict_membership, "compare covering families as literal morphism sets");
  sub->add_option("--threads", a.threads, "worker threads (0 = hardware)");
  for (const std::string& o : spec.options) {
    if (o == "functor") sub->add_option("--functor", a.functor);
    if (o == "category") sub->add_option("--category", a.category);
    if (o == "object") sub->add_option("--object", a.object);
    if (o == "sigma") sub->add_option("--sigma", a.sigma);
    if (o == "f") sub->add_option("--f", a.f);
    if (o == "g") sub->add_option("--g", a.g);
    if (o == "transformation") sub->add_option("--transformation", a.transformation);
    if (o == "from") sub->add_option("--from", a.from);
    if (o == "to") sub->add_option("--to", a.to);
    if (o == "left") sub->add_option("--left", a.left);
    if (o == "right") sub->add_option("--right", a.right);
    if (o == "site") sub->add_option("--site", a.site);
    if (o == "cover") sub->add_option("--cover", a.cover);
    if (o == "enrichment") sub->add_option("--enrichment", a.enrichment);
    if (o == "first") sub->add_option("--first", a.first);
    if (o == "second") sub->add_option("--second", a.second);
    if (o == "presheaf") sub->add_option("--presheaf", a.presheaves, "repeatable where several are accepted")->allow_extra_args(false);
    if (o == "suite") sub->add_option("--suite", a.suites, "repeatable; default all")->allow_extra_args(false);
    if (o == "scale") sub->add_option("--scale", a.scale, "case count multiplier");
    if (o == "max-dim") sub->add_option("--max-dim", a.max_dim, "nerve truncation (default: --max-degree)");
    if (o == "coslice") sub->add_flag("--coslice", a.coslice);
    if (o == "cobase") sub->add_flag("--cobase", a.cobase);
  }
}

void emit(std::ostream& out, const std::string& command, const Report& r, bool as_json) {
  json body = json::object();
  body["command"] = command;
  body["verdict"] = r.pass ? "pass" : "fail";
  for (auto it = r.body.begin(); it != r.body.end(); ++it) body[it.key()] = *it;
  if (as_json) {
    out << body.dump(2) << "\n";
  } else {
    out << command << ": " << (r.pass ? "pass" : "fail") << "\n";
    json rest = body;
    rest.erase("command");
    rest.erase("verdict");
    render(out, rest, 2);
  }
}

int emit_error(std::ostream& out, std::ostream& err, const std::string& command, const Error& e, bool as_json,
               int code, const json& location) {
  err << "fixcat " << command << ": " << e.what();
  if (location.contains("line")) err << " (line " << location["line"].get<int>() << ")";
  err << "\n";
  if (as_json) {
    json body = json::object();
    body["command"] = command;
    body["verdict"] = code == kInputError ? "error" : "fail";
    json error = {{"code", e.code()}, {"message", e.what()}};
    for (auto it = location.begin(); it != location.end(); ++it) error[it.key()] = *it;
    body["error"] = error;
    out << body.dump(2) << "\n";
  }
  return code;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& c : commands()) out.push_back(c.name);
    return out;
  }();
  return names;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Finite category fixed point workbench", "fixcat");
  app.require_subcommand(1);
  Args a;
  std::map<CLI::App*, const CommandSpec*> subs;
  for (const CommandSpec& spec : commands()) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    add_options(sub, spec, a);
    subs[sub] = &spec;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }
  const CommandSpec* spec = nullptr;
  for (const auto& [sub, s] : subs)
    if (sub->parsed()) spec = s;
  if (!spec) return kInputError;

  Context cx(a);
  try {
    Report r = spec->run(cx);
    emit(out, spec->name, r, a.json_output);
    return r.pass ? kPass : kPropertyFails;
  } catch (const ParseError& e) {
    return emit_error(out, err, spec->name, e, a.json_output, kInputError, {{"line", e.line()}});
  } catch (const ReferenceError& e) {
    return emit_error(out, err, spec->name, e, a.json_output, kInputError, {{"name", e.name()}, {"line", e.line()}});
  } catch (const ValidationError& e) {
    json where = {{"witness", e.report().witness}};
    return emit_error(out, err, spec->name, e, a.json_output, kPropertyFails, where);
  } catch (const Error& e) {
    const int code = input_codes().count(e.code()) ? kInputError : kPropertyFails;
    return emit_error(out, err, spec->name, e, a.json_output, code, json::object());
  }
}

}  // namespace fixcat::cli
