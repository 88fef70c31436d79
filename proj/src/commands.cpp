#include "gould/commands.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "gould/document.hpp"
#include "gould/generate.hpp"
#include "gould/limits.hpp"

namespace gould {

namespace {

Document load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

MSet on_set(const Document& doc, const std::string& token) {
  if (token.empty()) return doc.universe->full_set();
  return doc.universe->mset_from_point_mask(parse_set_token(*doc.universe, token));
}

PointSet on_points(const Document& doc, const std::string& token) {
  if (token.empty())
    return PointSet(doc.universe.get(), doc.universe->full_set().point_mask());
  return doc.universe->pointset_from_mask(parse_set_token(*doc.universe, token));
}

std::vector<std::string> split_names(const std::string& csv) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t comma = csv.find(',', start);
    if (comma == std::string::npos) comma = csv.size();
    if (comma > start) out.push_back(csv.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

FnSequence sequence_from(const Document& doc, const std::string& terms_csv,
                         const std::string& limit_name) {
  FnSequence fs;
  for (const auto& name : split_names(terms_csv)) fs.terms.push_back(doc.function(name));
  if (fs.terms.empty()) throw ValidationError("--terms needs at least one function");
  if (!limit_name.empty()) fs.declared_limit = doc.function(limit_name);
  return fs;
}

std::string gould_report(const Universe& u, const VecFunction& f,
                         const GouldResult& g) {
  std::ostringstream os;
  os << "integrable: " << (g.integrable ? "true" : "false") << '\n';
  if (g.integrable) {
    os << "value: " << vec_str(*g.value) << '\n';
  } else if (g.failure) {
    os << "witness: block " << g.failure->block.str() << " mass "
       << rat_str(g.failure->mass) << " points " << u.point_label(g.failure->point_t)
       << "," << u.point_label(g.failure->point_s) << " values "
       << vec_str(f.at(g.failure->point_t)) << ","
       << vec_str(f.at(g.failure->point_s)) << '\n';
  }
  return os.str();
}

struct Args {
  std::string file, object, property, measure, function, vmeasure, on, terms,
      limit_fn, target, out, epsilon, bound, kind = "additive";
  std::size_t chains = 4, depth = 4, points = 3, carriers = 1, dim = 1;
  std::uint64_t seed = 0;
  std::size_t limit = kDefaultBlockLimit;
  bool verify = false, unsafe_random = false, carrier_block = false;
};

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"exact computations for non-additive set functions on finite spaces"};
  app.require_subcommand(1);
  Args a;

  auto add_file = [&](CLI::App* cmd) {
    cmd->add_option("file", a.file, "input document")->required();
    cmd->add_option("--out", a.out, "write the report to this path");
    cmd->add_option("--limit", a.limit, "block-count limit for enumerations");
  };
  auto add_mf = [&](CLI::App* cmd) {
    add_file(cmd);
    cmd->add_option("--measure", a.measure)->required();
    cmd->add_option("--function", a.function)->required();
    cmd->add_option("--on", a.on, "restrict to this measurable set");
  };

  CLI::App* c_check = app.add_subcommand("check", "evaluate a property of a set function");
  add_file(c_check);
  c_check->add_option("--object", a.object)->required();
  c_check->add_option("--property", a.property)->required();

  CLI::App* c_variation = app.add_subcommand("variation", "variation of a set function");
  add_file(c_variation);
  c_variation->add_option("--object", a.object)->required();
  c_variation->add_option("--on", a.on);

  CLI::App* c_mstar = app.add_subcommand("mstar", "sup of m over measurable subsets");
  add_file(c_mstar);
  c_mstar->add_option("--object", a.object)->required();
  c_mstar->add_option("--on", a.on);

  CLI::App* c_mtilde = app.add_subcommand("mtilde", "inf of the variation over measurable supersets");
  add_file(c_mtilde);
  c_mtilde->add_option("--object", a.object)->required();
  c_mtilde->add_option("--on", a.on);

  CLI::App* c_atoms = app.add_subcommand("atoms", "list every atom");
  add_file(c_atoms);
  c_atoms->add_option("--object", a.object)->required();

  CLI::App* c_decompose = app.add_subcommand("decompose", "first atom decomposition");
  add_file(c_decompose);
  c_decompose->add_option("--object", a.object)->required();

  CLI::App* c_locate = app.add_subcommand("locate-point", "carrier point of an atom");
  add_file(c_locate);
  c_locate->add_option("--object", a.object)->required();
  c_locate->add_option("--on", a.on)->required();
  c_locate->add_flag("--carrier-block", a.carrier_block,
                     "return the carrier block's first point on block algebras");

  CLI::App* c_gould = app.add_subcommand("gould", "integrability and integral");
  add_mf(c_gould);

  CLI::App* c_choquet = app.add_subcommand("choquet", "layer-cake integral");
  add_mf(c_choquet);

  CLI::App* c_tzero = app.add_subcommand("tzero", "largest full-measure threshold");
  add_mf(c_tzero);

  CLI::App* c_tm = app.add_subcommand("tm", "total-measurability decision");
  add_mf(c_tm);
  c_tm->add_option("--epsilon", a.epsilon);

  CLI::App* c_net = app.add_subcommand("simulate-net", "seeded refinement chains");
  add_mf(c_net);
  c_net->add_option("--chains", a.chains)->required();
  c_net->add_option("--depth", a.depth)->required();
  c_net->add_option("--seed", a.seed)->required();

  CLI::App* c_leb = app.add_subcommand("limits-lebesgue", "per-term integral identity on an atom");
  add_file(c_leb);
  c_leb->add_option("--measure", a.measure)->required();
  c_leb->add_option("--terms", a.terms)->required();
  c_leb->add_option("--limit-fn", a.limit_fn)->required();
  c_leb->add_option("--on", a.on)->required();

  CLI::App* c_bounded = app.add_subcommand("limits-bounded", "co-null uniform bound");
  add_file(c_bounded);
  c_bounded->add_option("--measure", a.measure)->required();
  c_bounded->add_option("--terms", a.terms)->required();
  c_bounded->add_option("--bound", a.bound)->required();

  CLI::App* c_uniform = app.add_subcommand("limits-uniform", "uniform convergence on a sub-atom");
  add_file(c_uniform);
  c_uniform->add_option("--measure", a.measure)->required();
  c_uniform->add_option("--terms", a.terms)->required();
  c_uniform->add_option("--on", a.on)->required();
  c_uniform->add_option("--target", a.target)->required();

  CLI::App* c_intm = app.add_subcommand("intmeasure", "integral measure table");
  add_file(c_intm);
  c_intm->add_option("--measure", a.measure)->required();
  c_intm->add_option("--function", a.function)->required();

  CLI::App* c_rn = app.add_subcommand("rn", "Radon-Nikodym derivative");
  add_file(c_rn);
  c_rn->add_option("--measure", a.measure)->required();
  c_rn->add_option("--vmeasure", a.vmeasure)->required();
  c_rn->add_flag("--verify", a.verify, "also print the verification table");

  CLI::App* c_gen = app.add_subcommand("gen", "emit a seeded document");
  c_gen->add_option("--seed", a.seed)->required();
  c_gen->add_option("--points", a.points)->required();
  c_gen->add_option("--carriers", a.carriers)->required();
  c_gen->add_option("--kind", a.kind);
  c_gen->add_option("--dim", a.dim);
  c_gen->add_flag("--unsafe-random", a.unsafe_random);
  c_gen->add_option("--out", a.out);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  std::ostringstream report;
  int code = 0;
  try {
    if (app.got_subcommand(c_check)) {
      const Document doc = load(a.file);
      const auto prop = property_from_name(a.property);
      if (!prop) throw ValidationError("unknown property '" + a.property + "'");
      const PropertyReport r = check_property(doc.measure(a.object), *prop);
      report << "property " << property_name(r.property) << ": "
             << (r.holds ? "true" : "false") << '\n';
      if (!r.holds) {
        report << "witness:";
        for (const auto& w : r.witness) report << ' ' << w.str();
        report << '\n' << "detail: " << r.detail << '\n';
        code = 1;
      }
      if (!r.note.empty()) report << "note: " << r.note << '\n';
    } else if (app.got_subcommand(c_variation)) {
      const Document doc = load(a.file);
      const MSet e = on_set(doc, a.on);
      report << "variation " << e.str() << " = "
             << rat_str(variation(doc.measure(a.object), e, a.limit)) << '\n';
    } else if (app.got_subcommand(c_mstar)) {
      const Document doc = load(a.file);
      const PointSet e = on_points(doc, a.on);
      report << "mstar " << e.str() << " = "
             << rat_str(m_star(doc.measure(a.object), e)) << '\n';
    } else if (app.got_subcommand(c_mtilde)) {
      const Document doc = load(a.file);
      const PointSet e = on_points(doc, a.on);
      report << "mtilde " << e.str() << " = "
             << rat_str(m_tilde(doc.measure(a.object), e, a.limit)) << '\n';
    } else if (app.got_subcommand(c_atoms)) {
      const Document doc = load(a.file);
      const SetFunction& m = doc.measure(a.object);
      const Mask full = doc.universe->full_set().blocks();
      std::size_t count = 0;
      for (Mask b = 1; b <= full; ++b) {
        const MSet s(doc.universe.get(), b);
        if (is_atom(m, s)) {
          report << "atom " << s.str() << " m = " << rat_str(m.at_mask(b)) << '\n';
          ++count;
        }
      }
      if (count == 0) {
        report << "no atoms\n";
        code = 1;
      }
    } else if (app.got_subcommand(c_decompose)) {
      const Document doc = load(a.file);
      const auto d = decompose(doc.measure(a.object), a.limit);
      if (d) {
        report << "decomposition {";
        for (std::size_t i = 0; i < d->atoms.size(); ++i)
          report << (i ? "," : "") << d->atoms[i].str();
        report << "}\n";
      } else {
        report << "not finitely purely atomic\n";
        code = 1;
      }
    } else if (app.got_subcommand(c_locate)) {
      const Document doc = load(a.file);
      const AtomPoint p = locate_atom_point(
          doc.measure(a.object), on_set(doc, a.on),
          a.carrier_block ? AtomPointMode::carrier_block : AtomPointMode::point);
      report << "atom " << p.atom.str() << " point "
             << doc.universe->point_label(p.point) << " residual "
             << rat_str(p.residual_value) << '\n';
    } else if (app.got_subcommand(c_gould)) {
      const Document doc = load(a.file);
      const VecFunction& f = doc.function(a.function);
      const GouldResult g = gould_integral(f, doc.measure(a.measure), on_set(doc, a.on));
      report << gould_report(*doc.universe, f, g);
      if (!g.integrable) code = 1;
    } else if (app.got_subcommand(c_choquet)) {
      const Document doc = load(a.file);
      const MSet e = on_set(doc, a.on);
      report << "choquet " << e.str() << " = "
             << rat_str(choquet_integral(doc.function(a.function),
                                         doc.measure(a.measure), e))
             << '\n';
    } else if (app.got_subcommand(c_tzero)) {
      const Document doc = load(a.file);
      const MSet e = on_set(doc, a.on);
      report << "t0 " << e.str() << " = "
             << rat_str(t_zero(doc.function(a.function), doc.measure(a.measure), e))
             << '\n';
    } else if (app.got_subcommand(c_tm)) {
      const Document doc = load(a.file);
      std::optional<Rational> eps;
      if (!a.epsilon.empty()) eps = parse_rational_token(a.epsilon);
      const TMReport r = is_totally_measurable(
          doc.function(a.function), doc.measure(a.measure), on_set(doc, a.on), eps,
          a.limit);
      report << "totally measurable";
      if (r.epsilon) report << " at epsilon " << rat_str(*r.epsilon);
      report << ": " << (r.measurable_totally ? "true" : "false") << '\n';
      report << "bad set " << r.bad_set.str() << " variation "
             << rat_str(r.bad_set_variation) << '\n';
      if (r.witness_family) {
        report << "family:";
        for (const auto& s : *r.witness_family) report << ' ' << s.str();
        report << '\n';
      }
      if (!r.measurable_totally) code = 1;
    } else if (app.got_subcommand(c_net)) {
      const Document doc = load(a.file);
      const NetReport r =
          simulate_net(doc.function(a.function), doc.measure(a.measure),
                       on_set(doc, a.on), a.chains, a.depth, a.seed);
      report << r.text;
      if (!r.outcome.integrable) code = 1;
    } else if (app.got_subcommand(c_leb)) {
      const Document doc = load(a.file);
      const FnSequence fs = sequence_from(doc, a.terms, a.limit_fn);
      const LebesgueReport r =
          lebesgue_identity_check(fs, doc.measure(a.measure), on_set(doc, a.on));
      report << "point " << doc.universe->point_label(r.point) << '\n';
      for (const auto& row : r.rows)
        report << "n=" << row.n << " integral-difference "
               << vec_str(row.integral_difference) << " point-difference-scaled "
               << vec_str(row.point_difference_scaled) << " equal "
               << (row.equal ? "true" : "false") << '\n';
      if (!r.all_equal) code = 1;
    } else if (app.got_subcommand(c_bounded)) {
      const Document doc = load(a.file);
      const FnSequence fs = sequence_from(doc, a.terms, "");
      const UniformBoundReport r = uniform_bounded_atom(
          fs, doc.measure(a.measure), parse_rational_token(a.bound), a.limit);
      report << "U " << r.u.str() << '\n'
             << "complement mass " << rat_str(r.complement_mass) << '\n'
             << "sup |f_n| on U " << rat_str(r.sup_norm_on_u) << " bound "
             << rat_str(r.bound) << '\n';
    } else if (app.got_subcommand(c_uniform)) {
      const Document doc = load(a.file);
      const FnSequence fs = sequence_from(doc, a.terms, "");
      const UniformConvergenceReport r =
          uniform_convergence_atom(fs, doc.measure(a.measure), on_set(doc, a.on),
                                   parse_vector_token(a.target));
      report << "U " << r.u.str() << '\n';
      for (std::size_t n = 0; n < r.sup_distances.size(); ++n)
        report << "n=" << n + 1 << " sup-distance " << rat_str(r.sup_distances[n])
               << " bound " << rat_str(r.bounds[n]) << '\n';
      if (!r.all_within) code = 1;
    } else if (app.got_subcommand(c_intm)) {
      const Document doc = load(a.file);
      const VecMeasure mu =
          integral_measure(doc.function(a.function), doc.measure(a.measure));
      const Mask full = doc.universe->full_set().blocks();
      for (Mask b = 0; b <= full; ++b)
        report << "mu " << MSet(doc.universe.get(), b).str() << " = "
               << vec_str(mu.at_mask(b)) << '\n';
    } else if (app.got_subcommand(c_rn)) {
      const Document doc = load(a.file);
      const SetFunction& m = doc.measure(a.measure);
      const RNResult r = rn_derivative(m, doc.vmeasure(a.vmeasure), a.limit);
      report << "atoms {";
      for (std::size_t i = 0; i < r.atom_basis.atoms.size(); ++i)
        report << (i ? "," : "") << r.atom_basis.atoms[i].str();
      report << "}\n";
      for (std::size_t p = 0; p < doc.universe->point_count(); ++p)
        report << "f " << doc.universe->point_label(p) << " = "
               << vec_str(r.derivative.at(p)) << '\n';
      report << "verified: " << (r.verified ? "true" : "false") << '\n';
      if (a.verify) {
        const VecMeasure back = integral_measure(r.derivative, m);
        const Mask full = doc.universe->full_set().blocks();
        for (Mask b = 0; b <= full; ++b)
          report << "integral " << MSet(doc.universe.get(), b).str() << " = "
                 << vec_str(back.at_mask(b)) << '\n';
      }
    } else if (app.got_subcommand(c_gen)) {
      GeneratorSpec spec;
      spec.seed = a.seed;
      spec.points = a.points;
      spec.carriers = a.carriers;
      spec.dim = a.dim;
      spec.unsafe_random = a.unsafe_random;
      const auto kind = gen_kind_from_name(a.kind);
      if (!kind) throw ValidationError("unknown kind '" + a.kind + "'");
      spec.kind = *kind;
      report << print_document(generate(spec));
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  if (!a.out.empty()) {
    std::ofstream f(a.out);
    if (!f) {
      err << "error: cannot write '" << a.out << "'\n";
      return 2;
    }
    f << report.str();
  } else {
    out << report.str();
  }
  return code;
}

} // namespace gould
