#include "liequad/theorems.hpp"

#include "liequad/brackets.hpp"
#include "liequad/symmetry.hpp"

#include <cmath>
#include <sstream>

namespace liequad {

std::string_view to_string(TheoremId id)
{
    switch (id) {
    case TheoremId::T2: return "T2";
    case TheoremId::T3: return "T3";
    case TheoremId::T4: return "T4";
    case TheoremId::T5: return "T5";
    }
    return "?";
}

TheoremId theorem_for(GeometryKind kind)
{
    switch (kind) {
    case GeometryKind::Symplectic: return TheoremId::T2;
    case GeometryKind::Cosymplectic: return TheoremId::T3;
    case GeometryKind::Contact: return TheoremId::T4;
    case GeometryKind::Cocontact: return TheoremId::T5;
    }
    return TheoremId::T2;
}

std::size_t expected_level_set_dim(GeometryKind kind, std::size_t n)
{
    return PhaseGeometry(kind, n).dim() - n;
}

const Hypothesis* TheoremReport::find(std::string_view name) const
{
    for (const auto& h : hypotheses)
        if (h.name == name)
            return &h;
    return nullptr;
}

namespace {

std::string index_list(const std::vector<std::size_t>& idx)
{
    std::string s;
    for (std::size_t i : idx)
        s += (s.empty() ? "" : ", ") + std::string("f") + std::to_string(i + 1);
    return s;
}

// "f2", "f1 - 2*f3", ...
std::string combination_name(const std::vector<Rational>& e)
{
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0)
            continue;
        Rational c = e[i];
        std::string name = "f" + std::to_string(i + 1);
        if (s.empty()) {
            if (c == -1)
                s = "-";
            else if (c != 1)
                s = to_string(c) + "*";
        } else {
            s += c < 0 ? " - " : " + ";
            Rational a = c < 0 ? Rational(-c) : c;
            if (a != 1)
                s += to_string(a) + "*";
        }
        s += name;
    }
    return s.empty() ? "0" : s;
}

bool unit_vector(const std::vector<Rational>& e)
{
    std::size_t nonzero = 0;
    for (const auto& x : e) {
        if (x == 0)
            continue;
        if (x != 1)
            return false;
        ++nonzero;
    }
    return nonzero == 1;
}

Verdict holds_if(Answer a) { return verdict_from_answer(a); }

TheoremReport run(const HamiltonianSystem& sys, const std::vector<ScalarField>& fs, const std::vector<double>& alphas,
                  std::uint64_t seed, const std::vector<std::vector<double>>& points, bool liouville)
{
    const PhaseGeometry& g = *sys.geometry;
    const std::size_t n = g.n();
    if (fs.empty())
        throw ArityError("no constants of motion supplied");
    if (fs.size() != n)
        throw ArityError("expected " + std::to_string(n) + " constants of motion, got " + std::to_string(fs.size()));
    if (alphas.size() != fs.size())
        throw ArityError("expected one level value per constant of motion");
    for (const auto& f : fs)
        if (!f.geometry || !(*f.geometry == g))
            throw GeometryMismatch("constant of motion defined on a different geometry");

    TheoremReport rep;
    rep.theorem = theorem_for(g.kind());
    rep.geometry = g.kind();
    rep.n = n;
    rep.liouville_mode = liouville;

    std::vector<Expr> f;
    for (const auto& s : fs)
        f.push_back(s.expr);
    const bool contact_type = g.has_contact_form();
    const VectorField dyn = dynamics_field(sys);

    // (a), (b)
    if (contact_type) {
        const std::size_t z = *g.z();
        Hypothesis a{"good_hamiltonian", Verdict::Unknown, "", std::nullopt};
        ZeroTest hz = is_identically_zero(differentiate(sys.H, z));
        a.verdict = holds_if(answer_from_zero(hz));
        a.detail = a.verdict == Verdict::Holds ? "H does not depend on z"
                                               : "dH/dz = " + to_string(simplify(differentiate(sys.H, z)), g.chart());
        rep.hypotheses.push_back(std::move(a));

        Hypothesis b{"reeb_invariant_constants", Verdict::Holds, "", std::nullopt};
        std::vector<std::size_t> bad, unsure;
        for (std::size_t i = 0; i < n; ++i) {
            Answer ans = answer_from_zero(is_identically_zero(differentiate(f[i], z)));
            if (ans == Answer::No)
                bad.push_back(i);
            else if (ans == Answer::Unknown)
                unsure.push_back(i);
        }
        b.verdict = !bad.empty() ? Verdict::Fails : !unsure.empty() ? Verdict::Unknown : Verdict::Holds;
        b.detail = !bad.empty()      ? "depends on z: " + index_list(bad)
                   : !unsure.empty() ? "z-dependence undecided: " + index_list(unsure)
                                     : "every constant is invariant along the Reeb field";
        rep.hypotheses.push_back(std::move(b));
    }

    // (c)
    {
        Hypothesis c{"constants_of_motion", Verdict::Holds, "", std::nullopt};
        std::vector<std::size_t> bad, unsure;
        for (std::size_t i = 0; i < n; ++i) {
            Answer ans = is_constant_of_motion(sys, f[i]);
            if (ans == Answer::No)
                bad.push_back(i);
            else if (ans == Answer::Unknown)
                unsure.push_back(i);
        }
        c.verdict = !bad.empty() ? Verdict::Fails : !unsure.empty() ? Verdict::Unknown : Verdict::Holds;
        c.detail = !bad.empty()      ? "not conserved: " + index_list(bad)
                   : !unsure.empty() ? "conservation undecided: " + index_list(unsure)
                                     : "every constant has vanishing evolution derivative";
        rep.hypotheses.push_back(std::move(c));
    }

    // (d) closure
    std::vector<AlgebraElement> fbasis;
    for (const auto& e : f)
        fbasis.push_back({e});
    BracketFn fbr = [&g](const AlgebraElement& a, const AlgebraElement& b) {
        return AlgebraElement{bracket(g, a[0], b[0])};
    };
    {
        Hypothesis d{"closure", Verdict::Unknown, "", std::nullopt};
        try {
            StructureConstants c = structure_constants(fbasis, fbr, seed);
            rep.structure_constants = c;
            if (c.numerically_verified) {
                d.verdict = Verdict::Unknown;
                d.detail = "structure constants found, closure verified only numerically";
            } else {
                d.verdict = Verdict::Holds;
                d.detail = c.is_abelian() ? "brackets vanish" : "brackets close with constant structure constants";
            }
        } catch (const NotClosedError& e) {
            d.verdict = Verdict::Fails;
            d.detail = e.what();
            d.counterexample = std::make_pair(e.i() + 1, e.j() + 1);
        } catch (const LinearlyDependentBasisError& e) {
            d.verdict = Verdict::Unknown;
            d.detail = std::string("structure constants are not unique: ") + e.what();
        }
        rep.hypotheses.push_back(std::move(d));
    }

    if (liouville) {
        Hypothesis ab{"abelian", Verdict::Unknown, "", std::nullopt};
        if (rep.structure_constants) {
            const auto& c = *rep.structure_constants;
            ab.verdict = Verdict::Holds;
            ab.detail = "constants are in involution";
            for (std::size_t i = 0; i < n && ab.verdict == Verdict::Holds; ++i)
                for (std::size_t j = i + 1; j < n && ab.verdict == Verdict::Holds; ++j)
                    for (std::size_t k = 0; k < n; ++k)
                        if (c(i, j, k) != 0) {
                            ab.verdict = Verdict::Fails;
                            ab.counterexample = std::make_pair(i + 1, j + 1);
                            ab.detail = "{f" + std::to_string(i + 1) + ", f" + std::to_string(j + 1) + "} is nonzero";
                            break;
                        }
            if (ab.verdict == Verdict::Holds && c.numerically_verified)
                ab.verdict = Verdict::Unknown;
        } else {
            const Hypothesis* d = rep.find("closure");
            if (d->counterexample) {
                ab.verdict = Verdict::Fails;
                ab.counterexample = d->counterexample;
                ab.detail = "brackets do not close, so they cannot all vanish";
            } else {
                ab.detail = "structure constants unavailable";
            }
        }
        rep.hypotheses.push_back(std::move(ab));
    }

    // (e) solvability: function level and vector-field level
    std::optional<SolvableFlag> flag;
    {
        Hypothesis e{"solvable", Verdict::Unknown, "", std::nullopt};
        Verdict fn_level = Verdict::Unknown;
        if (rep.structure_constants) {
            DerivedSeries ds = derived_series(*rep.structure_constants);
            rep.derived_series = ds.dims;
            if (ds.solvable) {
                flag = solvable_flag(*rep.structure_constants);
                fn_level = verify_flag(*rep.structure_constants, *flag) ? Verdict::Holds : Verdict::Unknown;
                if (rep.structure_constants->numerically_verified)
                    fn_level = Verdict::Unknown;
            } else {
                fn_level = Verdict::Fails;
            }
        }
        // generators of the symmetry algebra as vector fields
        std::vector<AlgebraElement> vbasis;
        if (contact_type)
            vbasis.push_back(VectorField::unit(g.chart_ptr(), *g.z()).components());
        for (const auto& x : f)
            vbasis.push_back(hamiltonian_vector_field(g, x).components());
        ChartPtr chart = g.chart_ptr();
        BracketFn vbr = [chart](const AlgebraElement& a, const AlgebraElement& b) {
            return commutator(VectorField(chart, a), VectorField(chart, b)).components();
        };
        Verdict vf_level = Verdict::Unknown;
        std::string vf_note;
        try {
            StructureConstants vc = structure_constants(vbasis, vbr, seed);
            rep.field_constants = vc;
            vf_level = is_solvable(vc) ? (vc.numerically_verified ? Verdict::Unknown : Verdict::Holds) : Verdict::Fails;
            vf_note = vf_level == Verdict::Fails ? "the generated vector fields do not form a solvable algebra"
                                                 : "the generated vector fields form a solvable algebra";
        } catch (const NotClosedError& ex) {
            vf_level = Verdict::Fails;
            vf_note = std::string("vector fields do not close: ") + ex.what();
        } catch (const LinearlyDependentBasisError& ex) {
            vf_level = fn_level;
            vf_note = std::string("vector-field generators are linearly dependent (") + ex.what() + ")";
            rep.notes.push_back("the Hamiltonian vector fields of the constants are linearly dependent; the "
                                "vector-field solvability check defers to the function-level result");
        }
        e.verdict = combine(fn_level, vf_level);
        std::string fn_note = !rep.structure_constants ? "function-level check unavailable"
                              : fn_level == Verdict::Fails ? "derived series of the constants does not reach zero"
                              : fn_level == Verdict::Holds ? "derived series of the constants reaches zero"
                                                           : "function-level solvability not certified";
        e.detail = fn_note + "; " + vf_note;
        rep.hypotheses.push_back(std::move(e));
    }

    // (f) functional independence
    LevelSet m{sys.geometry, f, alphas, {}};
    for (const auto& x : points) {
        if (x.size() != g.dim())
            continue;
        bool on = true;
        try {
            for (std::size_t i = 0; i < n && on; ++i)
                on = std::fabs(evaluate(f[i], x) - alphas[i]) <= 1e-9;
        } catch (const DomainError&) {
            on = false;
        }
        if (on)
            m.points.push_back(x);
    }
    if (!points.empty() && m.points.empty())
        rep.notes.push_back("no supplied point lies on the level set; points were found by Newton iteration");
    {
        Hypothesis h{"functional_independence", Verdict::Unknown, "", std::nullopt};
        try {
            RankReport rr = functional_independence_rank(m, seed);
            m.points = rr.points;
            rep.level_set_points = rr.points;
            h.verdict = holds_if(rr.verdict);
            h.detail = "rank " + std::to_string(rr.rank) + " of " + std::to_string(n) + " at " +
                       std::to_string(rr.points.size()) + " level-set points";
            if (rr.verdict == Answer::Yes)
                rep.dim_level_set = g.dim() - n;
        } catch (const NoPointFound& ex) {
            h.detail = std::string("no point on the level set: ") + ex.what();
        }
        rep.hypotheses.push_back(std::move(h));
    }

    // (g) c^k_ij alpha_k = 0
    {
        Hypothesis h{"structure_constraint", Verdict::Unknown, "", std::nullopt};
        if (rep.structure_constants) {
            const auto& c = *rep.structure_constants;
            h.verdict = Verdict::Holds;
            h.detail = "c^k_ij alpha_k vanishes for all i, j";
            for (std::size_t i = 0; i < n && h.verdict == Verdict::Holds; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    double s = 0;
                    for (std::size_t k = 0; k < n; ++k)
                        if (c(i, j, k) != 0)
                            s += to_double(c(i, j, k)) * alphas[k];
                    if (std::fabs(s) > 1e-12) {
                        h.verdict = Verdict::Fails;
                        h.counterexample = std::make_pair(i + 1, j + 1);
                        std::ostringstream os;
                        os.precision(17);
                        os << "sum_k c^k_" << i + 1 << j + 1 << " alpha_k = " << s;
                        h.detail = os.str();
                        break;
                    }
                }
            if (h.verdict == Verdict::Holds && c.numerically_verified)
                h.verdict = Verdict::Unknown;
        } else {
            h.detail = "structure constants unavailable";
        }
        rep.hypotheses.push_back(std::move(h));
    }

    // certified package
    if (contact_type) {
        std::string rname = g.kind() == GeometryKind::Contact ? "R" : "R_z";
        rep.certified_package.push_back({rname, VectorField::unit(g.chart_ptr(), *g.z())});
    }
    if (flag) {
        for (const auto& e : flag->adapted) {
            std::vector<Expr> terms;
            for (std::size_t i = 0; i < n; ++i)
                if (e[i] != 0)
                    terms.push_back(Expr(e[i]) * f[i]);
            Expr comb = simplify(Expr::sum(std::move(terms)));
            std::string name = unit_vector(e) ? combination_name(e) : "(" + combination_name(e) + ")";
            rep.certified_package.push_back({"X_{" + name + "}", hamiltonian_vector_field(g, comb)});
        }
    } else {
        rep.certified_package.clear();
        rep.notes.push_back("no solvable flag, so no certified symmetry package");
    }
    for (const auto& p : rep.certified_package)
        rep.package_symmetry.push_back(is_symmetry(p.field, dyn));

    // (h) tangency
    {
        Hypothesis h{"tangency", Verdict::Unknown, "", std::nullopt};
        std::vector<std::pair<std::string, VectorField>> fields;
        if (!rep.certified_package.empty())
            for (const auto& p : rep.certified_package)
                fields.emplace_back(p.name, p.field);
        else
            for (std::size_t i = 0; i < n; ++i)
                fields.emplace_back("X_{f" + std::to_string(i + 1) + "}", hamiltonian_vector_field(g, f[i]));
        fields.emplace_back(g.kind() == GeometryKind::Cosymplectic || g.kind() == GeometryKind::Cocontact ? "E_H" : "X_H",
                            dyn);
        Answer all = Answer::Yes;
        std::string failing;
        for (const auto& [name, v] : fields) {
            Answer a = Answer::Unknown;
            try {
                a = tangent_to_level_set(v, m);
            } catch (const NoSamplePoints&) {
                a = Answer::Unknown;
            }
            if (a != Answer::Yes && failing.empty())
                failing = name;
            all = combine(all, a);
        }
        h.verdict = holds_if(all);
        h.detail = all == Answer::Yes ? "package fields and dynamics are tangent to the level set"
                                      : "not certified tangent: " + failing;
        rep.hypotheses.push_back(std::move(h));
    }

    if (g.kind() == GeometryKind::Contact || g.kind() == GeometryKind::Cocontact)
        rep.notes.push_back("in this chart the Hamiltonian field of a constant c is -c times the Reeb field");
    if (g.kind() == GeometryKind::Cosymplectic || g.kind() == GeometryKind::Cocontact)
        rep.notes.push_back("t is the curve parameter: its equation dt/ds = 1 integrates trivially");

    rep.verdict = Verdict::Holds;
    for (const auto& h : rep.hypotheses)
        rep.verdict = combine(rep.verdict, h.verdict);
    return rep;
}

}  // namespace

TheoremReport check_integrability(const HamiltonianSystem& sys, const std::vector<ScalarField>& fs,
                                  const std::vector<double>& alphas, std::uint64_t seed,
                                  const std::vector<std::vector<double>>& points)
{
    return run(sys, fs, alphas, seed, points, false);
}

TheoremReport liouville_corollary(const HamiltonianSystem& sys, const std::vector<ScalarField>& fs,
                                  const std::vector<double>& alphas, std::uint64_t seed,
                                  const std::vector<std::vector<double>>& points)
{
    return run(sys, fs, alphas, seed, points, true);
}

}  // namespace liequad
