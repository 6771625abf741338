#include "cohw/commands.hpp"

#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "cohw/hopf.hpp"
#include "cohw/textio.hpp"
#include "cohw/verify.hpp"

namespace cohw {

using Json = nlohmann::ordered_json;

namespace {

// Raised when a computation contradicts a guaranteed identity.
class InternalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The section needed by a command fails its invariants.
class NegativeCertificate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CommandInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fnv1a64(const std::string& bytes) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandInputError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// ---- text rendering ---------------------------------------------------------------

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_null()) return "none";
  return v.dump();
}

bool all_scalars(const Json& a) {
  for (const auto& x : a)
    if (x.is_structured()) return false;
  return true;
}

void render(const Json& obj, size_t indent, std::string& out) {
  std::string pad(indent, ' ');
  for (const auto& [key, v] : obj.items()) {
    if (v.is_object()) {
      out += pad + key + ":\n";
      render(v, indent + 2, out);
    } else if (v.is_array() && all_scalars(v)) {
      std::string s;
      for (size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + scalar_text(v[k]);
      out += pad + key + ": " + (v.empty() ? "(none)" : s) + "\n";
    } else if (v.is_array()) {
      out += pad + key + ":\n";
      for (const auto& item : v) {
        std::string block;
        render(item, indent + 4, block);
        block.replace(indent + 2, 2, "- ");
        out += block;
      }
    } else {
      out += pad + key + ": " + scalar_text(v) + "\n";
    }
  }
}

std::string render_text(const Json& report) {
  std::string out;
  render(report, 0, out);
  return out;
}

// ---- shared pieces -------------------------------------------------------------------

Json sequence_json(const MixedExactSequence& s) {
  Json j;
  j["sequence"] = s.render();
  j["exact"] = s.exact();
  Json clauses = Json::array();
  for (const auto& c : s.clauses) {
    Json x;
    x["clause"] = c.clause;
    x["ok"] = c.ok;
    if (c.sampled) x["sampled"] = true;
    if (!c.detail.empty()) x["detail"] = c.detail;
    clauses.push_back(x);
  }
  j["clauses"] = clauses;
  return j;
}

void require_exact(const MixedExactSequence& s) {
  if (!s.exact()) throw InternalFailure("exact sequence check failed: " + s.render());
}

Json central_les_json(const CentralLes& les, const std::string& variant) {
  std::string h1 = "H1" + variant, h2 = "H2" + variant;
  Json j = sequence_json(les.sequence);
  j["pi0 dims (Z, U, Q)"] = les.pi0_dims;
  j[h1 + "(Z) dim"] = les.h1z_dim;
  if (les.h2z_dim) j[h2 + "(Z) dim"] = *les.h2z_dim;
  j["connecting map rank"] = les.delta_rank;
  j[h1 + "(Q) is a point"] = les.pi1q_point;
  j["middle map bijective"] = les.middle_bijective();
  j["summary"] = std::string("middle map bijective: ") + (les.middle_bijective() ? "yes" : "no") + "; " + h1 + "(Z) dim " +
                 std::to_string(les.h1z_dim);
  return j;
}

std::vector<std::string> vector_strings(const std::vector<Vec>& vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back("[" + to_string(v) + "]");
  return out;
}

std::vector<std::string> element_labels(const FiniteGroup& g, const std::vector<int>& xs) {
  std::vector<std::string> out;
  for (int x : xs) out.push_back(g.label(x));
  return out;
}

std::vector<Gaussian> parse_coordinates(const std::string& s, size_t dim, const std::string& what) {
  std::vector<Gaussian> out;
  std::string item;
  std::istringstream in(s);
  try {
    while (std::getline(in, item, ',')) out.push_back(parse_gaussian(item));
  } catch (const MathError& e) {
    throw CommandInputError(what + ": " + e.what());
  }
  if (out.size() != dim)
    throw CommandInputError(what + " has " + std::to_string(out.size()) + " coordinates, expected " + std::to_string(dim));
  return out;
}

Vec rational_coordinates(const std::string& s, size_t dim, const std::string& what) {
  Vec v;
  for (const auto& z : parse_coordinates(s, dim, what)) {
    if (sgn(z.im) != 0) throw CommandInputError(what + " must be rational");
    v.push_back(z.re);
  }
  return v;
}

class Session {
 public:
  explicit Session(const CommandRequest& r) : req_(r) {}

  Json run() {
    Json report;
    report["command"] = req_.command;
    if (req_.command == "verify") return verify(report);
    std::string text = read_file(req_.path);
    report["input"] = {{"file", req_.path}, {"bytes", text.size()}, {"fnv1a64", fnv1a64(text)}};
    model_ = load_model(text);
    if (req_.command == "validate") return validate(report);
    if (req_.command == "pi") return pi(report);
    if (req_.command == "h1") return h1(report);
    if (req_.command == "phin-classify") return phin_classify(report);
    if (req_.command == "phin-les") return phin_les(report);
    if (req_.command == "hodge-classify") return hodge_classify(report);
    if (req_.command == "hodge-les") return hodge_les(report);
    throw CommandInputError("unknown command '" + req_.command + "'");
  }

  int exit_code() const { return exit_; }

 private:
  const SectionStatus& section(const std::vector<std::string>& kinds, Json& report) {
    const SectionStatus& s = model_.pick(kinds, req_.section);
    report["section"] = s.kind + " " + s.name;
    if (!s.valid) throw NegativeCertificate("section '" + s.name + "' is invalid: " + s.violation);
    return s;
  }

  Json validate(Json& report) {
    Json sections = Json::array();
    bool all = true;
    for (const auto& s : model_.status) {
      Json j;
      j["kind"] = s.kind;
      j["name"] = s.name;
      j["valid"] = s.valid;
      all = all && s.valid;
      if (!s.valid) {
        j["violation"] = s.violation;
        sections.push_back(j);
        continue;
      }
      if (s.kind == "matrix") {
        const QMat& m = model_.matrices.at(s.name);
        j["size"] = std::to_string(m.rows()) + "x" + std::to_string(m.cols());
      } else if (s.kind == "lie") {
        const auto& l = model_.lies.at(s.name);
        j["dim"] = l->dim();
        j["class"] = l->nilpotency_class();
        j["lower central series dims"] = l->lcs_dims();
      } else if (s.kind == "group") {
        const auto& g = model_.groups.at(s.name);
        j["order"] = g->order();
        j["abelian"] = g->is_abelian();
      } else if (s.kind == "action") {
        if (model_.finite_actions.count(s.name)) {
          const auto& a = model_.finite_actions.at(s.name);
          j["acting order"] = a.action.group->order();
          j["target order"] = a.action.target->order();
        } else {
          const auto& a = model_.lie_actions.at(s.name);
          j["acting order"] = a.action.group->order();
          j["target dim"] = a.action.target->dim();
        }
      } else if (s.kind == "double_coset") {
        const auto& d = model_.double_cosets.at(s.name);
        j["order"] = d.group->order();
        j["subgroup orders"] = std::vector<size_t>{d.first.size(), d.second.size()};
      } else if (s.kind == "phin") {
        const auto& x = model_.phins.at(s.name).group;
        j["dim"] = x.lie->dim();
        j["p"] = x.p.get_str();
      } else if (s.kind == "mhs") {
        MHSReport r = validate_mhs(model_.mhs.at(s.name).group);
        std::vector<std::string> graded;
        for (const auto& [m, d] : r.graded_dims) graded.push_back("Gr_" + std::to_string(m) + " dim " + std::to_string(d));
        j["weight graded pieces"] = graded;
      } else {
        const auto& u = model_.cosimplicials.at(s.name);
        j["top degree"] = u.top();
        j["codegeneracies"] = !u.semi();
      }
      sections.push_back(j);
    }
    report["sections"] = sections;
    report["valid"] = all;
    if (!all) exit_ = kExitNegative;
    return report;
  }

  Json pi(Json& report) {
    const SectionStatus& s = section({"double_coset", "cosimplicial"}, report);
    int k = req_.degree;
    report["degree"] = k;
    if (k < 0) throw CommandInputError("degree must be non-negative");
    if (s.kind == "double_coset") {
      const auto& d = model_.double_cosets.at(s.name);
      FiniteCosimplicial g = cogenerate(double_coset_object(d.group, d.first, d.second));
      if (k == 0) {
        SubgroupData first = make_subgroup(d.group, d.first);
        std::vector<int> elems;
        for (const auto& e : pi0_finite(g)) elems.push_back(first.embedding[static_cast<size_t>(e[0])]);
        std::sort(elems.begin(), elems.end());
        if (elems != intersect_sorted(d.first, d.second)) throw InternalFailure("pi0 differs from the subgroup intersection");
        report["pi0 order"] = elems.size();
        report["pi0 elements"] = element_labels(*d.group, elems);
      } else if (k == 1) {
        size_t classes = pi1_finite(g).classes(), brute = count_double_cosets(*d.group, d.first, d.second);
        if (classes != brute) throw InternalFailure("pi1 class count differs from the double coset count");
        report["pi1 classes"] = classes;
        report["double cosets by enumeration"] = brute;
      } else {
        throw CommandInputError("finite objects support degrees 0 and 1");
      }
      return report;
    }
    const LieCosimplicial& u = model_.cosimplicials.at(s.name);
    if (k == 0) {
      auto basis = pi0_lie(u);
      report["pi0 dim"] = basis.size();
      report["pi0 basis"] = vector_strings(basis);
      return report;
    }
    bool abelian = std::all_of(u.obj.begin(), u.obj.end(), [](const LiePtr& o) { return o->is_abelian(); });
    if (abelian) {
      if (k >= u.top()) throw CommandInputError("degree " + std::to_string(k) + " needs objects up to degree " + std::to_string(k + 1));
      report["pi" + std::to_string(k) + " dim"] = pi_abelian(u)[static_cast<size_t>(k)];
      return report;
    }
    if (k != 1) throw CommandInputError("nonabelian objects support degrees 0 and 1");
    if (u.top() < 2) throw CommandInputError("degree 1 needs objects up to degree 2");
    LiePi1 p(u);
    report["pi1 tangent dimension at the trivial class"] = p.tangent_dimension(Vec(u.obj[1]->dim()));
    return report;
  }

  Json h1(Json& report) {
    const SectionStatus& s = section({"action"}, report);
    if (model_.finite_actions.count(s.name)) {
      const auto& a = model_.finite_actions.at(s.name);
      FiniteH0H1 h = h0_h1(a.action);
      report["H0 order"] = h.fixed.size();
      report["H0 elements"] = element_labels(*a.action.target, h.fixed);
      report["Z1 size"] = h.h1.cocycles.size();
      report["H1 classes"] = h.h1.classes();
      if (a.central) {
        FiniteLes les = les_group_cohomology(a.action, *a.central);
        report["central subgroup"] = element_labels(*a.action.target, *a.central);
        report["long exact sequence"] = sequence_json(les.summary);
        require_exact(les.summary);
      }
      return report;
    }
    const auto& a = model_.lie_actions.at(s.name);
    UnipotentH0H1 h = h0_h1(a.action);
    report["H0 dim"] = h.fixed.size();
    report["H0 basis"] = vector_strings(h.fixed);
    report["H1 tangent dimension at the trivial class"] = h.h1.tangent_dimension(Vec(h.h1.object().obj[1]->dim()));
    if (a.action.target->is_abelian()) {
      auto dims = pi_abelian(cochain_cosimplicial(a.action, 3));
      report["H1 dim"] = dims[1];
      report["H2 dim"] = dims[2];
    }
    if (a.central) {
      Rng rng(req_.seed);
      CentralLes les = les_group_cohomology(a.action, *a.central, rng);
      report["long exact sequence"] = central_les_json(les, "");
      require_exact(les.sequence);
    }
    return report;
  }

  Json phin_classify(Json& report) {
    const SectionStatus& s = section({"phin"}, report);
    const PhiNGroup& x = model_.phins.at(s.name).group;
    report["dim"] = x.lie->dim();
    report["p"] = x.p.get_str();
    report["D^{phi=1,N=0} dim"] = d_phi1(x).size();
    TwistedConjugacy t = twisted_conj_classify(x.lie, x.phi);
    if (!t.consistent) throw InternalFailure("twisted conjugation: transitivity and trivial stabilizer disagree");
    report["twisted conjugation"] = {{"transitive", t.transitive}, {"stabilizer dim", t.stabilizer.size()}};
    for (SelmerVariant v : {SelmerVariant::FE, SelmerVariant::GE}) {
      H1QuotientReport h = h1_quotient(x, v);
      Json j;
      j["pi0 dim"] = h.pi0.size();
      if (h.dims) {
        j["pi dims"] = *h.dims;
        if (h.dual_pi2) {
          j["pi2 by duality"] = *h.dual_pi2;
          if (*h.dual_pi2 != (*h.dims)[2]) throw InternalFailure("pi2 differs from its dual description");
        }
      } else {
        LiePi1 p(h.object);
        j["pi1 tangent dimension at the trivial class"] = p.tangent_dimension(Vec(h.object.obj[1]->dim()));
      }
      report[variant_name(v)] = j;
    }
    if (!req_.frobenius.empty() || !req_.monodromy.empty()) {
      size_t n = x.lie->dim();
      Vec a = req_.frobenius.empty() ? Vec(n) : rational_coordinates(req_.frobenius, n, "--frobenius");
      Vec b = req_.monodromy.empty() ? Vec(n) : rational_coordinates(req_.monodromy, n, "--monodromy");
      PhiNTorsor q{x, a, b};
      LieCosimplicial ge = selmer_quotient_cosimplicial(x, SelmerVariant::GE, 2);
      Json j;
      try {
        j["cocycle"] = "[" + to_string(phin_torsor_cocycle(q, ge)) + "]";
      } catch (const PhiNError& e) {
        throw NegativeCertificate(std::string("torsor datum: ") + e.what());
      }
      j["trivial class"] = phin_torsor_equivalent(q, PhiNTorsor{x, Vec(n), Vec(n)});
      report["torsor"] = j;
    }
    return report;
  }

  Json phin_les(Json& report) {
    const SectionStatus& s = section({"phin"}, report);
    const PhiNData& d = model_.phins.at(s.name);
    if (!d.central) throw CommandInputError("phin-les needs a 'central' entry in section '" + s.name + "'");
    Rng rng(req_.seed);
    CentralLes les = quotient_les(d.group, *d.central, rng);
    report["long exact sequence"] = central_les_json(les, "_{g/e}");
    require_exact(les.sequence);
    return report;
  }

  Json hodge_classify(Json& report) {
    const SectionStatus& s = section({"mhs"}, report);
    const MHSGroup& m = model_.mhs.at(s.name).group;
    W0F0 sub = w0_f0_subgroups(m);
    report["dim"] = m.lie->dim();
    report["W0 dim"] = sub.w0.dim();
    report["F0 dim"] = sub.f0.dim();
    report["H1 dim"] = h1_dimension(m);
    if (req_.element.empty()) return report;
    auto coords = parse_coordinates(req_.element, m.lie->dim(), "--element");
    CVec u(coords.begin(), coords.end());
    MHSTorsorClass c = classify_torsor(m, u);
    if (!equivalent(m, u, c.representative)) throw InternalFailure("normal form is not in the double coset of the element");
    std::vector<std::string> nf, re, im;
    for (const auto& z : c.representative) {
      nf.push_back(to_string(z));
      re.push_back(z.re.get_str());
      im.push_back(z.im.get_str());
    }
    report["element"] = to_string(u);
    report["normal form"] = nf;
    report["normal form real parts"] = re;
    report["normal form imaginary parts"] = im;
    return report;
  }

  Json hodge_les(Json& report) {
    const SectionStatus& s = section({"mhs"}, report);
    const MHSData& d = model_.mhs.at(s.name);
    if (!d.central) throw CommandInputError("hodge-les needs a 'central' entry in section '" + s.name + "'");
    Rng rng(req_.seed);
    MHSLes les = mhs_les(d.group, *d.central, rng);
    report["H1 dims (Z, U, Q)"] = std::vector<size_t>{h1_dimension(les.z), h1_dimension(d.group), h1_dimension(les.q)};
    report["long exact sequence"] = central_les_json(les.les, "");
    require_exact(les.les.sequence);
    return report;
  }

  Json verify(Json& report) {
    if (!is_suite(req_.suite)) throw CommandInputError("unknown suite '" + req_.suite + "'");
    if (req_.instances && *req_.instances < 0) throw CommandInputError("--instances must be non-negative");
    report["seed"] = req_.seed;
    Json suites = Json::array();
    bool all = true;
    for (const auto& r : run_verify(req_.suite, req_.seed, req_.instances)) {
      Json j;
      j["suite"] = r.suite;
      j["instances"] = r.instances;
      j["pass"] = r.ok();
      Json props = Json::array();
      for (const auto& p : r.properties) {
        Json x;
        x["property"] = p.name;
        x["checked"] = p.checked;
        x["passed"] = p.passed;
        if (!p.counterexamples.empty()) x["counterexamples"] = p.counterexamples;
        props.push_back(x);
      }
      j["properties"] = props;
      suites.push_back(j);
      all = all && r.ok();
    }
    report["suites"] = suites;
    report["result"] = all ? "pass" : "fail";
    if (!all) exit_ = kExitInternal;
    return report;
  }

  CommandRequest req_;
  Model model_;
  int exit_ = kExitSuccess;
};

}  // namespace

CommandOutput run_command(const CommandRequest& request) {
  CommandOutput out;
  Session session(request);
  try {
    Json report = session.run();
    out.exit_code = session.exit_code();
    out.out = request.json ? report.dump(2) + "\n" : render_text(report);
    return out;
  } catch (const InputError& e) {
    out.exit_code = kExitInput;
    out.err = "error: " + request.path + ":" + e.what() + "\n";
  } catch (const CommandInputError& e) {
    out.exit_code = kExitInput;
    out.err = std::string("error: ") + e.what() + "\n";
  } catch (const CapExceeded& e) {
    out.exit_code = kExitInput;
    out.err = std::string("error: computation cap exceeded: ") + e.what() + "\n";
  } catch (const EnvelopeTooLarge& e) {
    out.exit_code = kExitInput;
    out.err = std::string("error: ") + e.what() + "\n";
  } catch (const NegativeCertificate& e) {
    out.exit_code = kExitNegative;
    out.err = std::string("negative: ") + e.what() + "\n";
  } catch (const InternalFailure& e) {
    out.exit_code = kExitInternal;
    out.err = std::string("verification failure: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    out.exit_code = kExitInternal;
    out.err = std::string("internal error: ") + e.what() + "\n";
  }
  return out;
}

}  // namespace cohw
