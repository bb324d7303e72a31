#include "dsi/cli.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "dsi/liealgebroid.hpp"
#include "dsi/neighborhoods.hpp"
#include "dsi/obstructions.hpp"
#include "dsi/resolve.hpp"
#include "dsi/thomwhitney.hpp"

namespace dsi::cli {

namespace {

// Runs every task on a pool of `jobs` workers. Tasks write to their own slots, so the
// assembled report does not depend on scheduling. The first failing task, by index, rethrows.
void run_all(int jobs, const std::vector<std::function<void()>>& tasks) {
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next = 0;
    auto worker = [&] {
        for (std::size_t i; (i = next++) < tasks.size();) {
            try {
                tasks[i]();
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t n = std::min<std::size_t>(std::max(jobs, 1), tasks.size());
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

struct Params {
    int wmax, k, order, window, nerve_depth, pmax, jobs;
};

int pick(const std::optional<int>& flag, const std::optional<int>& file, int fallback) {
    return flag ? *flag : file ? *file : fallback;
}

[[noreturn]] void missing(const std::string& what) { throw ScenarioError(0, 0, what); }

template <class T>
std::string tuple(const std::vector<T>& xs) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << xs[i];
    os << ")";
    return os.str();
}

std::string str(std::size_t n) { return std::to_string(n); }
std::string str(int n) { return std::to_string(n); }
std::string yes(bool b) { return b ? "yes" : "no"; }

KoszulData koszul(const Scenario& s) {
    if (!s.embedding) missing("this command needs an [embedding] section");
    std::vector<std::string> section;
    for (const auto& item : s.embedding->section) section.push_back(item.text);
    return build_koszul(s.embedding->variables, section);
}

// ---- resolve-check ----

void resolve_check(const Scenario& s, const Params& p, Report& r) {
    const KoszulData k = koszul(s);
    const ResolutionReport rep = check_resolution(k, p.wmax);
    std::vector<std::string> cols{"weight"};
    const int rank = static_cast<int>(k.rank());
    for (int d = -rank; d <= 0; ++d) cols.push_back("H^" + str(d));
    cols.push_back("O_Y/I");
    auto& t = r.table("cohomology", cols);
    std::vector<std::size_t> h0;
    for (const auto& wc : rep.weights) {
        std::vector<std::string> row{str(wc.weight)};
        for (int d = -rank; d <= 0; ++d) {
            auto it = wc.dims.find(d);
            row.push_back(str(it == wc.dims.end() ? std::size_t{0} : it->second));
        }
        row.push_back(str(wc.expected_h0));
        t.row(std::move(row));
        h0.push_back(wc.dims.count(0) ? wc.dims.at(0) : 0);
    }
    r.check("koszul-resolution", rep.ok,
            rep.ok ? "acyclic off degree 0 with H^0 = O_Y/I for weights <= " + str(p.wmax)
                   : str(rep.diagnostics.size()) + " diagnostics, first: " + rep.diagnostics.front());
    r.check("regular-section", k.zero_components.empty(),
            k.zero_components.empty() ? "no zero components" : str(k.zero_components.size()) + " zero components");
    r.verdict("H^0 by weight: " + tuple(h0));
    for (const auto& d : rep.diagnostics) r.verdict("diagnostic: " + d);
}

// ---- ce-check ----

void ce_check(const Scenario& s, const Params& p, Report& r) {
    const KoszulData k = koszul(s);
    const DeRhamComplex dr = build_de_rham(k);
    std::vector<IdentityCheck> ids;
    std::vector<PhiReport> phi(p.k + 1);
    CeReport ce;
    std::vector<std::function<void()>> tasks;
    tasks.push_back([&] { ids = verify_de_rham_identities(dr); });
    for (int j = 0; j <= p.k; ++j) tasks.push_back([&, j] { phi[j] = verify_phi_quasi_iso(dr, j, p.wmax); });
    tasks.push_back([&] { ce = ce_consistency(build_tangent(k), dr, p.k, p.wmax); });
    run_all(p.jobs, tasks);

    std::string broken;
    for (const auto& id : ids)
        if (!id.ok && broken.empty()) broken = id.name + ": " + (id.failures.empty() ? "fails" : id.failures.front());
    r.check("cartan-identities", broken.empty(), broken.empty() ? str(ids.size()) + " identities hold" : broken);

    bool phi_ok = true;
    for (const auto& rep : phi) phi_ok = phi_ok && rep.ok;
    r.check("phi-quasi-iso", phi_ok, "phi^(j) for j <= " + str(p.k) + ", weights <= " + str(p.wmax));
    r.check("ce-consistency", ce.ok, ce.ok ? "" : ce.disagreements.empty() ? "disagrees" : ce.disagreements.front());

    auto& t = r.table("phi^(" + str(p.k) + ")", {"weight", "H^0", "O_Y/I^" + str(p.k + 1), "rank phi", "ok"});
    std::vector<std::size_t> h0;
    for (const auto& w : phi[p.k].weights) {
        const std::size_t h = w.h.count(0) ? w.h.at(0) : 0;
        h0.push_back(h);
        t.row({str(w.weight), str(h), str(w.target_dim), str(w.phi_rank), yes(w.ok)});
    }
    auto& orders = r.table("orders", {"k", "cumulative H^0", "cumulative target", "increment"});
    std::vector<std::size_t> totals;
    for (int j = 0; j <= p.k; ++j) {
        const std::size_t prev = j ? phi[j - 1].cumulative_h0 : 0;
        totals.push_back(phi[j].cumulative_h0);
        orders.row({str(j), str(phi[j].cumulative_h0), str(phi[j].cumulative_target), str(phi[j].cumulative_h0 - prev)});
    }
    r.verdict("H^0 of Omega^(" + str(p.k) + ") by weight: " + tuple(h0));
    r.verdict("cumulative H^0 for k = 0.." + str(p.k) + ": " + tuple(totals));
}

// ---- selfint and tor ----

std::vector<std::size_t> tor_sequence(const TorReport& tor) {
    std::vector<std::size_t> out;
    for (auto it = tor.total.rbegin(); it != tor.total.rend(); ++it) out.push_back(it->second);
    while (out.size() > 1 && out.back() == 0) out.pop_back();
    return out;
}

void tor_table(const TorReport& tor, Report& r) {
    std::vector<std::string> cols{"weight"};
    for (auto it = tor.total.rbegin(); it != tor.total.rend(); ++it) cols.push_back("Tor_" + str(-it->first));
    auto& t = r.table("tor", cols);
    for (const auto& [w, byd] : tor.by_weight) {
        std::vector<std::string> row{str(w)};
        for (auto it = tor.total.rbegin(); it != tor.total.rend(); ++it) {
            auto d = byd.find(it->first);
            row.push_back(str(d == byd.end() ? std::size_t{0} : d->second));
        }
        t.row(std::move(row));
    }
}

void selfint(const Scenario& s, const Params& p, Report& r) {
    const SelfIntersection si = build_self_intersection(koszul(s));
    CompletionReport comp;
    TorReport tor;
    run_all(p.jobs, {[&] { comp = verify_completion(si, p.k, p.wmax); }, [&] { tor = tor_dims(si, p.wmax); }});

    auto& t = r.table("completion", {"k", "agrees", "H (full / quotient)"});
    for (const auto& [k, ok] : comp.agrees) {
        std::string dims;
        for (auto it = comp.totals[k].rbegin(); it != comp.totals[k].rend(); ++it)
            dims += (dims.empty() ? "" : " ") + str(it->first) + ":" + str(it->second.first) + "/" + str(it->second.second);
        t.row({str(k), yes(ok), dims});
    }
    r.check("completion", comp.smallest_agreeing.has_value(),
            comp.smallest_agreeing ? "agrees for " + str(*comp.smallest_agreeing) + " <= k <= " + str(p.k)
                                   : "no agreement up to k = " + str(p.k));
    r.check("tor-swap-symmetric", tor.swap_symmetric);
    tor_table(tor, r);
    if (comp.smallest_agreeing) r.verdict("completion agrees for k >= " + str(*comp.smallest_agreeing));
    r.verdict("Tor dims: " + tuple(tor_sequence(tor)));
}

void tor(const Scenario& s, const Params& p, Report& r) {
    const TorReport t = tor_dims(build_self_intersection(koszul(s)), p.wmax);
    r.check("tor-swap-symmetric", t.swap_symmetric);
    tor_table(t, r);
    r.verdict("Tor dims: " + tuple(tor_sequence(t)));
}

// ---- algebroid ----

void algebroid(const Scenario& s, const Params& p, Report& r) {
    const KoszulData k = koszul(s);
    const TangentAlgebroid tangent = build_tangent(k);
    const int order = p.k;
    const TruncatedUEA uea = build_uea(tangent, order);
    const SelfIntersection si = build_self_intersection(k);
    const int rank = static_cast<int>(k.rank());
    TangentReport tr;
    UeaReport ur;
    JetReport jr;
    EndReport er;
    run_all(p.jobs, {[&] { tr = check_tangent(tangent, p.wmax); },
                     [&] { ur = check_uea(uea, p.wmax); },
                     [&] { jr = check_jet_comparison(build_jets(uea), si, std::min(p.wmax, 3)); },
                     [&] { er = end_complex(uea, -(rank + 1), 1); }});

    r.check("tangent", tr.ok(),
            tr.ok() ? "H concentrated in degree 1 and equal to the normal bundle"
                    : std::string(!tr.square_zero ? "Q^2 != 0" : !tr.concentrated ? "H off degree 1" : "H^1 differs from N"));
    std::vector<std::string> uea_bad;
    if (!ur.pbw) uea_bad.push_back("PBW");
    if (!ur.leibniz) uea_bad.push_back("Leibniz");
    if (!ur.associative) uea_bad.push_back("associativity");
    if (!ur.filtration_multiplicative) uea_bad.push_back("filtration");
    if (!ur.relations) uea_bad.push_back("relations");
    if (!ur.coassociative) uea_bad.push_back("coassociativity");
    std::string bad;
    for (const auto& b : uea_bad) bad += (bad.empty() ? "fails: " : ", ") + b;
    r.check("uea", ur.ok(), "order " + str(order) + (bad.empty() ? "" : "; " + bad));
    r.check("jet-comparison", jr.ok(), jr.failures.empty() ? "iso onto the completed self-intersection" : jr.failures.front());
    r.check("end-complex", er.ok(), std::string(er.chain_map ? "" : "U -> End is not a chain map; ") +
                                        (er.stabilized ? "window stabilized" : "window did not stabilize"));

    auto& t = r.table("end", {"degree", "Ext", "H(U)", "image of H(U)"});
    std::vector<std::size_t> ext;
    for (const auto& [d, dim] : er.ext) {
        auto get = [](const std::map<int, std::size_t>& m, int d) { return m.count(d) ? m.at(d) : std::size_t{0}; };
        t.row({str(d), str(dim), str(get(er.uea_h, d)), str(get(er.uea_image_rank, d))});
        if (dim) ext.push_back(dim);
    }
    r.verdict("End Ext dims: " + tuple(ext));
}

// ---- P^1 cover and transition ----

struct Transition {
    ChartCover cover;
    std::optional<FilteredAutomorphism> phi01, phi10;
    std::string error;  // set when the transition is not a unipotent automorphism
};

int default_window(const Scenario& s, int order) {
    if (!s.normal) return 4;
    return order * (s.normal->e + std::abs(s.normal->conormal_weight)) + 3;
}

Transition load_transition(const Scenario& s, const Params& p) {
    if (!s.transition) missing("this command needs a [transition] section");
    Rational c = 1 / s.normal->c;
    c.canonicalize();
    Transition t{p1_cover(s.normal->e, p.order, p.window, s.normal->conormal_weight, c), std::nullopt, std::nullopt, ""};
    const auto& u01 = t.cover.sheaf.u01();
    try {
        t.phi01.emplace(t.cover.sheaf, parse_value(u01, s.transition->z), parse_value(u01, s.transition->n0));
        if (s.transition->inverse_z)
            t.phi10.emplace(t.cover.sheaf, parse_value(u01, *s.transition->inverse_z), parse_value(u01, *s.transition->inverse_n0));
        else
            t.phi10.emplace(inverse(*t.phi01));
    } catch (const ScenarioError&) {
        throw;
    } catch (const std::exception& e) {
        t.error = e.what();
    }
    return t;
}

std::string derivation_text(const Derivation& d) {
    std::string out;
    for (const char* g : {"z", "n0"}) {
        auto img = d.image(*d.algebra()->slot(g));
        out += (out.empty() ? "" : ", ") + std::string(g) + " -> " + (img ? img->str() : "0");
    }
    return out;
}

// ---- tw-check ----

void tw_check(const Scenario& s, const Params& p, Report& r) {
    struct Item {
        std::string name;
        std::unique_ptr<TwModel> model;
        std::vector<int> weights;
    };
    std::vector<Item> items;
    if (s.embedding) {
        const KoszulData k = koszul(s);
        std::vector<int> ws;
        for (int w = 0; w <= p.wmax; ++w) ws.push_back(w);
        items.push_back({"constant diagram, depth " + str(p.nerve_depth),
                         std::make_unique<TwModel>(constant_diagram(k.algebra, k.q, p.nerve_depth)), ws});
    }
    if (s.p1_cover) {
        std::vector<std::pair<std::string, int>> bundles{{"O", 0}};
        if (s.normal) bundles.push_back({"N = O(" + str(s.normal->e) + ")", s.normal->e});
        if (s.normal) bundles.push_back({"N^vee = O(" + str(-s.normal->e) + ")", -s.normal->e});
        if (s.tangent) bundles.push_back({"T_X = O(2)", 2});
        std::vector<int> ws;
        for (int w = -p.window; w <= p.window; ++w) ws.push_back(w);
        for (const auto& [name, d] : bundles) items.push_back({name, std::make_unique<TwModel>(cech_line_bundle(d, p.window)), ws});
    }
    if (items.empty()) missing("tw-check needs an [embedding] or a [cover] section");

    std::vector<std::vector<RetractionReport>> reps(items.size());
    std::vector<std::function<void()>> tasks;
    for (std::size_t i = 0; i < items.size(); ++i) {
        reps[i].resize(items[i].weights.size());
        for (std::size_t j = 0; j < items[i].weights.size(); ++j)
            tasks.push_back([&, i, j] { reps[i][j] = check_retraction(*items[i].model, items[i].weights[j], p.pmax); });
    }
    run_all(p.jobs, tasks);

    auto& t = r.table("retraction", {"diagram", "weight", "H(TW)", "H(Tot)", "ok"});
    auto dims = [](const std::map<int, std::size_t>& h) {
        std::string out;
        for (const auto& [d, n] : h)
            if (n) out += (out.empty() ? "" : " ") + std::to_string(d) + ":" + std::to_string(n);
        return out.empty() ? std::string("0") : out;
    };
    for (std::size_t i = 0; i < items.size(); ++i) {
        std::string first_bad;
        std::map<int, std::size_t> total;
        for (std::size_t j = 0; j < reps[i].size(); ++j) {
            const auto& rep = reps[i][j];
            for (const auto& [d, n] : rep.h_tw) total[d] += n;
            if (!rep.ok() && first_bad.empty())
                first_bad = "weight " + str(rep.weight) + ": " + (rep.failures.empty() ? "H(TW) != H(Tot)" : rep.failures.front());
            if (dims(rep.h_tw) != "0" || dims(rep.h_tot) != "0" || !rep.ok())
                t.row({items[i].name, str(rep.weight), dims(rep.h_tw), dims(rep.h_tot), yes(rep.ok())});
        }
        r.check("retraction " + items[i].name, first_bad.empty(),
                first_bad.empty() ? "TW ~ Tot on " + str(reps[i].size()) + " weights, pmax " + str(p.pmax) : first_bad);
        r.verdict(items[i].name + ": H(TW) " + dims(total));
    }
}

// ---- mc-check ----

void mc_check(const Scenario& s, const Params& p, Report& r) {
    const Transition tr = load_transition(s, p);
    if (!tr.error.empty()) {
        r.check("cocycle", false, tr.error);
        return;
    }
    const ChartCover& cv = tr.cover;
    const CocycleReport cr = verify_cocycle(cv, *tr.phi01, *tr.phi10);
    r.check("cocycle", cr.ok(), cr.ok() ? "phi10 o phi01 = id through order " + str(p.order) : cr.failures.front());
    if (!cr.ok()) {
        for (const auto& f : cr.failures) r.verdict("cocycle failure: " + f);
        return;
    }

    LinftyStructure l;
    try {
        l = linfty_from_cocycle(cv, *tr.phi01);
    } catch (const std::exception& e) {
        r.check("maurer-cartan", false, e.what());
        return;
    }
    const CechLie& c = cv.action.lie;
    const TensorDgla edge = c.edge();
    const auto theta = cocycle_to_mc(c, l.theta);
    r.check("maurer-cartan", is_mc(edge, theta), "T dt1 with T = log phi01 in g01 of dim " + str(c.g01.dim()));
    r.check("holonomy", mc_to_cocycle(c, theta) == l.theta, "holonomy of T dt1 recovers T");

    // A fixed gauge element: chart values interpolated along the edge plus a bump vanishing at both ends.
    TwGauge a{zero_vec(c.g0.dim()), zero_vec(c.g1.dim()), edge.zero()};
    for (std::size_t i = 0; i < a.a0.size(); ++i) a.a0[i] = Rational(1, static_cast<int>(i) + 2);
    for (std::size_t i = 0; i < a.a1.size(); ++i) a.a1[i] = Rational(i % 2 ? -1 : 1, static_cast<int>(i) + 3);
    const auto& f = simplex_forms(1);
    const Vec r0 = c.rho0.apply(a.a0), r1 = c.rho1.apply(a.a1);
    for (std::size_t i = 0; i < a.edge.size(); ++i)
        a.edge[i] = f.t(0).scaled(r0[i]) + f.t(1).scaled(r1[i]) + (f.t(0) * f.t(1)).scaled(Rational(1, static_cast<int>(i) + 1));
    const auto moved = gauge_mc(c, a, theta);
    const Vec t2 = mc_to_cocycle(c, moved);
    r.check("gauge-action", valid_gauge(c, a) && is_mc(edge, moved) && t2 == gauge_cocycle(c, a.a0, a.a1, l.theta),
            "TW gauge matches the Cech action on the transition");
    const TwGauge back = round_trip_gauge(c, moved);
    r.check("round-trip", valid_gauge(c, back) && edge.equal(gauge_mc(c, back, moved), cocycle_to_mc(c, t2)),
            "gauge from theta' to the constant form of its holonomy");
    const auto link = connect_cocycles(c, l.theta, t2);
    r.check("connect", link && gauge_cocycle(c, link->first, link->second, l.theta) == t2,
            link ? "gauge found along the lower central series" : "no gauge found");

    const RelationReport rel = check_relations(cv, l, 1, p.pmax);
    r.check("linfty-relations", rel.ok(), rel.ok() ? str(rel.checked) + " relations checked" : rel.failures.front());

    std::vector<DeformReport> deform(3);
    std::vector<std::function<void()>> tasks;
    for (int w = -1; w <= 1; ++w) tasks.push_back([&, w] { deform[w + 1] = deform_tw(cv.sheaf, cv.action, l.theta, w, p.pmax); });
    run_all(p.jobs, tasks);
    auto& t = r.table("deformed-tw", {"weight", "H^0", "H^0 at pmax+1", "ok"});
    std::string bad;
    for (const auto& d : deform) {
        t.row({str(d.weight), str(d.h0), str(d.h0_next), yes(d.ok())});
        if (!d.ok() && bad.empty()) bad = "weight " + str(d.weight) + (d.failures.empty() ? ": unstable" : ": " + d.failures.front());
    }
    r.check("deformed-tw", bad.empty(), bad.empty() ? "(d + Q)^2 = 0 and H^0 stable" : bad);
    r.verdict("T = " + derivation_text(l.t));
}

// ---- obstruct ----

std::string verdict_for(const ClassReport& c) {
    const std::string head = "[" + c.name + "] ";
    if (!c.precondition) return head + "not computed (" + (c.notes.empty() ? "precondition fails" : c.notes.front()) + ")";
    if (!c.vanishes) return head + "undetermined (Ext1 dim " + str(c.ext1) + ")";
    if (*c.vanishes && c.ext1) return head + "vanishes (Ext1 dim " + str(c.ext1) + ", the class is a coboundary)";
    if (*c.vanishes) return head + "vanishes (Ext1 dim " + str(c.ext1) + ")";
    return head + "does not vanish (Ext1 dim " + str(c.ext1) + ")";
}

void obstruct_command(const Scenario& s, const Params& p, Report& r) {
    const Transition tr = load_transition(s, p);
    if (!tr.error.empty()) {
        r.check("cocycle", false, tr.error);
        return;
    }
    ObstructionReport rep;
    try {
        rep = obstruct(tr.cover, *tr.phi01, *tr.phi10, p.window, p.pmax);
    } catch (const std::exception& e) {
        r.check("cocycle", false, e.what());
        return;
    }
    r.check("cocycle", rep.cocycle.ok(), rep.cocycle.ok() ? "" : rep.cocycle.failures.front());
    for (const auto& f : rep.cocycle.failures) r.verdict("cocycle failure: " + f);
    if (!rep.cocycle.ok()) return;

    std::string rel;
    for (const auto& x : rep.relations)
        if (!x.ok() && rel.empty()) rel = x.failures.empty() ? "fails" : x.failures.front();
    r.check("linfty-relations", rel.empty(), rel.empty() ? "after each of " + str(rep.relations.size()) + " gauges" : rel);

    std::vector<const ClassReport*> classes;
    for (const auto& c : rep.splitting) classes.push_back(&c);
    for (const auto& c : rep.linearization) classes.push_back(&c);
    std::string cocycle_bad, lift_bad;
    bool stable = true;
    auto& t = r.table("classes", {"class", "order", "group", "computed", "cocycle", "Ext0", "Ext1", "Ext1 (TW)", "vanishes", "lift"});
    for (const ClassReport* c : classes) {
        if (c->precondition && !c->cocycle && cocycle_bad.empty()) cocycle_bad = c->name;
        if (c->vanishes.value_or(false) && !c->lift_verified && lift_bad.empty())
            lift_bad = c->name + (c->notes.empty() ? "" : ": " + c->notes.front());
        if (c->precondition) stable = stable && c->stabilized;
        const bool computed = c->precondition;
        t.row({c->name, c->name.substr(1), c->group, yes(computed), computed ? yes(c->cocycle) : "-", computed ? str(c->ext0) : "-", computed ? str(c->ext1) : "-",
               computed ? str(c->tw_ext1) : "-", c->vanishes ? yes(*c->vanishes) : "-",
               c->lift_built ? (c->lift_verified ? "verified" : "unverified") : "-"});
    }
    r.check("class-cocycles", cocycle_bad.empty(), cocycle_bad.empty() ? "" : "[" + cocycle_bad + "] is not a cocycle");
    r.check("lifts", lift_bad.empty(), lift_bad.empty() ? "every vanishing class lifted and glued" : lift_bad);
    bool tw_agrees = true;
    for (const ClassReport* c : classes)
        if (c->precondition) tw_agrees = tw_agrees && c->ext1 == c->tw_ext1;
    r.check("ext-tw-vs-cech", tw_agrees, "Ext1 from the TW model agrees with the Cech count");
    if (stable) r.check("window", true, "Ext windows stabilized at " + str(p.window));
    else r.indeterminate("window", "Ext window " + str(p.window) + " did not stabilize; raise --window");

    for (const ClassReport* c : classes) r.verdict(verdict_for(*c));
    r.verdict(std::string("split to order ") + str(p.order) + ": " + yes(rep.split()));
    r.verdict(std::string("linearizable to order ") + str(p.order) + ": " + yes(rep.linearized()));
}

using Command = void (*)(const Scenario&, const Params&, Report&);

const std::map<std::string, std::pair<Command, int>>& commands() {
    // default k per command
    static const std::map<std::string, std::pair<Command, int>> table{
        {"resolve-check", {resolve_check, 2}}, {"ce-check", {ce_check, 2}}, {"selfint", {selfint, 3}},
        {"tor", {tor, 2}},                     {"algebroid", {algebroid, -1}}, {"tw-check", {tw_check, 2}},
        {"mc-check", {mc_check, 2}},           {"obstruct", {obstruct_command, 2}}};
    return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"resolve-check", "ce-check", "selfint",  "tor",
                                                "algebroid",     "tw-check", "mc-check", "obstruct"};
    return names;
}

Report run_command(const std::string& command, const Scenario& s, const Settings& settings) {
    const auto it = commands().find(command);
    if (it == commands().end()) throw std::invalid_argument("unknown command '" + command + "'");
    const auto start = std::chrono::steady_clock::now();
    const Options& f = settings.overrides;
    const Options& o = s.options;
    Params p{};
    p.wmax = pick(f.wmax, o.wmax, 4);
    p.order = pick(f.order, o.order, 3);
    p.window = pick(f.window, o.window, default_window(s, p.order));
    p.nerve_depth = pick(f.nerve_depth, o.nerve_depth, 1);
    p.pmax = pick(f.pmax, o.pmax, 2);
    p.jobs = settings.jobs;
    int k_default = it->second.second;
    if (k_default < 0) k_default = s.embedding ? static_cast<int>(s.embedding->section.size()) : 1;
    p.k = pick(f.k, o.k, k_default);

    Report r;
    r.command = command;
    r.scenario = s.name;
    it->second.first(s, p, r);
    r.time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace dsi::cli
