#include "dsi/neighborhoods.hpp"

namespace dsi {

int DeRhamComplex::form_degree(const Monomial& m) const {
    int d = 0;
    for (std::size_t s : f_slots) d += m[s];
    return d;
}

Element DeRhamComplex::truncate(const Element& e, int k) const {
    return e.filtered([&](const Monomial& m) { return form_degree(m) <= k; });
}

DeRhamComplex build_de_rham(const KoszulData& k) {
    DeRhamComplex dr;
    dr.koszul = k;
    std::vector<Generator> gens = k.algebra->generators();
    const std::size_t r = gens.size();
    for (std::size_t i = 0; i < r; ++i) gens.push_back({"f" + std::to_string(i + 1), 0, gens[i].weight});
    dr.algebra = Algebra::make(k.algebra->variables(), std::move(gens));
    const auto nv = dr.algebra->nvars();
    for (std::size_t i = 0; i < r; ++i) {
        dr.e_slots.push_back(nv + i);
        dr.f_slots.push_back(nv + r + i);
    }
    auto gen = [&](std::size_t slot) {
        Monomial m = dr.algebra->unit();
        m[slot] = 1;
        return Element(dr.algebra, m);
    };
    const Element zero(dr.algebra);
    dr.d_dr = Derivation(dr.algebra, 1);
    dr.iota_q = Derivation(dr.algebra, 0);
    dr.l_q = Derivation(dr.algebra, 1);
    for (std::size_t i = 0; i < r; ++i) {
        const Element s = transfer(k.base_section[i], dr.algebra);
        dr.d_dr.set_slot(dr.e_slots[i], gen(dr.f_slots[i])).set_slot(dr.f_slots[i], zero);
        dr.iota_q.set_slot(dr.e_slots[i], zero).set_slot(dr.f_slots[i], s);
        dr.l_q.set_slot(dr.e_slots[i], s).set_slot(dr.f_slots[i], zero);
    }
    dr.total = dr.d_dr + dr.l_q;
    return dr;
}

std::vector<IdentityCheck> verify_de_rham_identities(const DeRhamComplex& dr) {
    std::vector<IdentityCheck> out;
    const auto& alg = dr.algebra;
    auto each_slot = [&](IdentityCheck& chk, auto&& lhs, auto&& rhs) {
        for (std::size_t s = 0; s < alg->width(); ++s) {
            Monomial m = alg->unit();
            m[s] = 1;
            const Element g(alg, m);
            Element a = lhs(g), b = rhs(g);
            if (!(a == b)) {
                chk.ok = false;
                chk.failures.push_back(alg->slot_name(s) + ": " + a.str() + " != " + b.str());
            }
        }
    };
    const Element zero(alg);
    const Derivation cartan = commutator(dr.iota_q, dr.d_dr);
    IdentityCheck c{"cartan L_Q = [iota_Q, d_DR]", true, {}};
    each_slot(c, [&](const Element& g) { return cartan.apply(g); }, [&](const Element& g) { return dr.l_q.apply(g); });
    out.push_back(std::move(c));

    IdentityCheck d2{"D^2 = 0", true, {}};
    each_slot(d2, [&](const Element& g) { return dr.total.apply(dr.total.apply(g)); }, [&](const Element&) { return zero; });
    out.push_back(std::move(d2));

    IdentityCheck l2{"L_Q^2 = 0", true, {}};
    each_slot(l2, [&](const Element& g) { return dr.l_q.apply(dr.l_q.apply(g)); }, [&](const Element&) { return zero; });
    out.push_back(std::move(l2));
    return out;
}

SliceBasis truncated_slice(const DeRhamComplex& dr, int k, int w) {
    auto all = slice_monomials(*dr.algebra, w);
    for (auto& [deg, list] : all)
        std::erase_if(list, [&](const Monomial& m) { return dr.form_degree(m) > k; });
    return SliceBasis(w, std::move(all));
}

SlicedComplex truncated_complex(const DeRhamComplex& dr, int k, int w) {
    SliceBasis basis = truncated_slice(dr, k, w);
    SlicedComplex c;
    const int r = static_cast<int>(dr.e_slots.size());
    c.lo = -r;
    for (int n = -r; n <= 0; ++n) {
        c.dims.push_back(basis.dim(n));
        std::vector<std::string> labels;
        if (auto it = basis.by_degree.find(n); it != basis.by_degree.end())
            for (const auto& m : it->second) labels.push_back(dr.algebra->format(m));
        c.labels.push_back(std::move(labels));
    }
    for (int n = -r; n < 0; ++n)
        c.diff.push_back(operator_matrix(basis, n, basis, n + 1, dr.algebra,
                                         [&](const Element& e) { return dr.truncate(dr.total.apply(e), k); }));
    return c;
}

AlgebraMap phi_map(const DeRhamComplex& dr) {
    AlgebraMap phi(dr.algebra, dr.koszul.base);
    for (std::size_t s = 0; s < dr.algebra->nvars(); ++s)
        phi.set_slot(s, Element::slot(dr.koszul.base, dr.algebra->slot_name(s)));
    for (std::size_t i = 0; i < dr.e_slots.size(); ++i) {
        phi.set_slot(dr.e_slots[i], Element(dr.koszul.base));
        phi.set_slot(dr.f_slots[i], -dr.koszul.base_section[i]);
    }
    return phi;
}

PhiReport verify_phi_quasi_iso(const DeRhamComplex& dr, int k, int w_max) {
    PhiReport rep;
    rep.k = k;
    const AlgebraMap phi = phi_map(dr);
    const auto& base = dr.koszul.base;
    const auto ideal_gens = ideal_power_generators(dr.koszul.base_section, k + 1);
    const auto augmentation_gens = dr.koszul.base_section;
    for (int w = 0; w <= w_max; ++w) {
        PhiWeightReport pw;
        pw.weight = w;
        SliceBasis basis = truncated_slice(dr, k, w);
        SlicedComplex c = truncated_complex(dr, k, w);
        auto h = cohomology(c, false);
        if (!h.ok()) {
            rep.ok = false;
            continue;
        }
        for (const auto& dh : h.degrees) pw.h[dh.degree] = dh.dim;

        SliceBasis target(w, slice_monomials(*base, w));
        const Echelon ideal = ideal_slice(base, ideal_gens, target);
        const Echelon aug = ideal_slice(base, augmentation_gens, target);
        pw.target_dim = target.dim(0) - ideal.rank();

        Echelon image = ideal;
        if (auto it = basis.by_degree.find(0); it != basis.by_degree.end())
            for (const auto& m : it->second) {
                Vec v = target.coords(0, phi.apply(Element(dr.algebra, m)));
                image.insert(v);
                if (dr.form_degree(m) > 0 && !aug.contains(v)) pw.augmentation_into_ideal = false;
            }
        pw.phi_rank = image.rank() - ideal.rank();
        if (auto it = basis.by_degree.find(-1); it != basis.by_degree.end())
            for (const auto& m : it->second) {
                Element db = dr.truncate(dr.total.apply(Element(dr.algebra, m)), k);
                if (!ideal.contains(target.coords(0, phi.apply(db)))) pw.chain_map = false;
            }
        bool vanish = true;
        for (const auto& [deg, d] : pw.h)
            if (deg != 0 && d != 0) vanish = false;
        const std::size_t h0 = pw.h.count(0) ? pw.h.at(0) : 0;
        pw.ok = vanish && h0 == pw.target_dim && pw.phi_rank == pw.target_dim && pw.chain_map &&
                pw.augmentation_into_ideal;
        rep.cumulative_h0 += h0;
        rep.cumulative_target += pw.target_dim;
        rep.ok = rep.ok && pw.ok;
        rep.weights.push_back(std::move(pw));
    }
    return rep;
}

}  // namespace dsi
