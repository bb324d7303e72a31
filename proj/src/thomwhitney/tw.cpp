#include "subspace.hpp"

#include <bit>
#include <tuple>

namespace dsi {

bool LevelMonomial::operator<(const LevelMonomial& o) const {
    return std::tie(level, component, monomial) < std::tie(o.level, o.component, o.monomial);
}

std::optional<Vec> AmbientSubspace::coords(std::span<const Rational> v) const {
    Vec c;
    c.reserve(free.size());
    for (std::size_t f : free) c.push_back(v[f]);
    Vec back = zero_vec(v.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (c[i] != 0)
            for (std::size_t r = 0; r < back.size(); ++r) back[r] += c[i] * basis[i][r];
    for (std::size_t r = 0; r < back.size(); ++r)
        if (back[r] != v[r]) return std::nullopt;
    return c;
}

TwModel::TwModel(CosimplicialDiagram v) : v_(std::move(v)) {
    const int depth = v_.depth();
    if (depth < 0) throw std::invalid_argument("diagram without levels");
    if (static_cast<int>(v_.cofaces.size()) != depth + 1) throw std::invalid_argument("one coface table per level");
    for (int n = 0; n <= depth; ++n) {
        tensor_.emplace_back();
        tensor_d_.emplace_back();
        for (const auto& comp : v_.levels[n]) {
            const Algebra& a = *comp.algebra;
            tensor_.back().emplace_back();
            for (int m = 0; m <= depth + 1; ++m) {
                std::vector<Variable> vars = a.variables();
                std::vector<Generator> gens = a.generators();
                for (int i = 1; i <= m; ++i) {
                    vars.push_back({"t" + std::to_string(i), 0, false});
                    gens.push_back({"dt" + std::to_string(i), 1, 0});
                }
                tensor_.back().back().push_back(Algebra::make(std::move(vars), std::move(gens)));
            }
            const AlgebraPtr& t = tensor_.back().back()[n];
            Derivation d(t, 1);
            for (std::size_t s = 0; s < a.width(); ++s) {
                const auto* img = comp.differential ? &comp.differential->image(s) : nullptr;
                if (img && *img)
                    d.set(a.slot_name(s), transfer(**img, t));
                else if (a.is_generator_slot(s))
                    d.set(a.slot_name(s), Element(t));
            }
            for (int i = 1; i <= n; ++i) {
                d.set("t" + std::to_string(i), Element::slot(t, "dt" + std::to_string(i)));
                d.set("dt" + std::to_string(i), Element(t));
            }
            tensor_d_.back().push_back(std::move(d));
        }
    }
}

Element TwModel::join(int level, std::size_t c, int m, const Element& v, const Element& omega) const {
    const AlgebraPtr& t = tensor(level, c, m);
    if (v.is_zero() || omega.is_zero()) return Element(t);
    return transfer(v, t) * transfer(omega, t);
}

std::map<Monomial, Element> TwModel::split(int level, std::size_t c, int m, const Element& x) const {
    const Algebra& a = *v_.levels[level][c].algebra;
    const std::size_t nv = a.nvars(), ng = a.ngens();
    const auto& alg = v_.levels[level][c].algebra;
    std::map<Monomial, Element> out;
    for (const auto& [mono, coef] : x.terms()) {
        Monomial am(nv + ng), om(2 * m);
        for (std::size_t i = 0; i < nv; ++i) am[i] = mono[i];
        for (int i = 0; i < m; ++i) om[i] = mono[nv + i];
        for (std::size_t i = 0; i < ng; ++i) am[nv + i] = mono[nv + m + i];
        for (int i = 0; i < m; ++i) om[m + i] = mono[nv + m + ng + i];
        auto [it, fresh] = out.try_emplace(om, alg);
        it->second.add_term(am, coef);
    }
    return out;
}

TwElement TwModel::zero() const {
    TwElement z;
    for (int n = 0; n <= depth(); ++n) {
        z.levels.emplace_back();
        for (std::size_t c = 0; c < v_.levels[n].size(); ++c) z.levels.back().emplace_back(tensor(n, c, n));
    }
    return z;
}

TwElement TwModel::unit() const {
    TwElement u = zero();
    for (int n = 0; n <= depth(); ++n)
        for (std::size_t c = 0; c < u.levels[n].size(); ++c) u.levels[n][c] = Element::constant(tensor(n, c, n), 1);
    return u;
}

TwElement TwModel::add(const TwElement& a, const TwElement& b) const {
    TwElement r = a;
    for (std::size_t n = 0; n < r.levels.size(); ++n)
        for (std::size_t c = 0; c < r.levels[n].size(); ++c) r.levels[n][c] += b.levels[n][c];
    return r;
}

TwElement TwModel::scaled(const TwElement& a, const Rational& s) const {
    TwElement r = a;
    for (auto& level : r.levels)
        for (auto& x : level) x = x.scaled(s);
    return r;
}

TwElement TwModel::product(const TwElement& a, const TwElement& b) const {
    TwElement r = zero();
    for (std::size_t n = 0; n < r.levels.size(); ++n)
        for (std::size_t c = 0; c < r.levels[n].size(); ++c) r.levels[n][c] = a.levels[n][c] * b.levels[n][c];
    return r;
}

TwElement TwModel::differential(const TwElement& a) const {
    TwElement r = zero();
    for (std::size_t n = 0; n < r.levels.size(); ++n)
        for (std::size_t c = 0; c < r.levels[n].size(); ++c)
            if (!a.levels[n][c].is_zero()) r.levels[n][c] = tensor_d_[n][c].apply(a.levels[n][c]);
    return r;
}

bool TwModel::equal(const TwElement& a, const TwElement& b) const {
    for (std::size_t n = 0; n < a.levels.size(); ++n)
        for (std::size_t c = 0; c < a.levels[n].size(); ++c)
            if (!(a.levels[n][c] - b.levels[n][c]).is_zero()) return false;
    return true;
}

std::vector<Element> TwModel::coface_tensor(int level, int k, int m, const std::vector<Element>& x) const {
    std::vector<Element> out;
    const auto& forms = simplex_forms(m);
    for (std::size_t c = 0; c < v_.levels[level].size(); ++c) {
        const ComponentMap& cm = v_.cofaces[level][k][c];
        Element y(tensor(level, c, m));
        for (const auto& [om, v] : split(level - 1, cm.source, m, x[cm.source]))
            y += join(level, c, m, apply_component_map(cm, v), Element(forms.algebra(), om));
        out.push_back(std::move(y));
    }
    return out;
}

std::vector<Element> TwModel::codegeneracy_tensor(int level, int k, int m, const std::vector<Element>& x) const {
    std::vector<Element> out;
    const auto& forms = simplex_forms(m);
    for (std::size_t c = 0; c < v_.levels[level].size(); ++c) {
        const ComponentMap& cm = v_.codegeneracies[level][k][c];
        Element y(tensor(level, c, m));
        for (const auto& [om, v] : split(level + 1, cm.source, m, x[cm.source]))
            y += join(level, c, m, apply_component_map(cm, v), Element(forms.algebra(), om));
        out.push_back(std::move(y));
    }
    return out;
}

std::vector<Element> TwModel::pull_forms(int level, int m_from, int m_to, const AlgebraMap& f,
                                         const std::vector<Element>& x) const {
    std::vector<Element> out;
    const auto& forms = simplex_forms(m_from);
    for (std::size_t c = 0; c < v_.levels[level].size(); ++c) {
        Element y(tensor(level, c, m_to));
        for (const auto& [om, v] : split(level, c, m_from, x[c]))
            y += join(level, c, m_to, v, f.apply(Element(forms.algebra(), om)));
        out.push_back(std::move(y));
    }
    return out;
}

std::vector<std::pair<std::string, Element>> TwModel::equalizer_residuals(const TwElement& a) const {
    std::vector<std::pair<std::string, Element>> out;
    for (int n = 0; n < depth(); ++n) {
        for (int k = 0; k <= n + 1; ++k) {
            auto lhs = coface_tensor(n + 1, k, n, a.levels[n]);
            auto rhs = pull_forms(n + 1, n + 1, n, face_map(simplex_forms(n + 1), simplex_forms(n), k), a.levels[n + 1]);
            for (std::size_t c = 0; c < lhs.size(); ++c)
                out.emplace_back("face " + std::to_string(n + 1) + "," + std::to_string(k) + " on " +
                                     v_.levels[n + 1][c].name,
                                 lhs[c] - rhs[c]);
        }
        if (!v_.has_codegeneracies()) continue;
        for (int k = 0; k <= n; ++k) {
            auto lhs = codegeneracy_tensor(n, k, n + 1, a.levels[n + 1]);
            auto rhs = pull_forms(n, n, n + 1, degeneracy_map(simplex_forms(n), simplex_forms(n + 1), k), a.levels[n]);
            for (std::size_t c = 0; c < lhs.size(); ++c)
                out.emplace_back("degeneracy " + std::to_string(n) + "," + std::to_string(k) + " on " +
                                     v_.levels[n][c].name,
                                 lhs[c] - rhs[c]);
        }
    }
    return out;
}

std::vector<std::string> TwModel::equalizer_defects(const TwElement& a) const {
    std::vector<std::string> out;
    for (const auto& [label, diff] : equalizer_residuals(a))
        if (!diff.is_zero()) out.push_back(label);
    return out;
}

TwElement TwModel::whitney(int k, const LevelElement& x) const {
    TwElement r = zero();
    for (int n = k; n <= depth(); ++n) {
        const auto& forms = simplex_forms(n);
        // increasing injections [k] -> [n], enumerated by their images
        for (unsigned mask = 0; mask < (1u << (n + 1)); ++mask) {
            if (std::popcount(mask) != k + 1) continue;
            std::vector<int> image;
            LevelElement y = x;
            int level = k;
            for (int i = 0; i <= n; ++i) {
                if (mask & (1u << i)) {
                    image.push_back(i);
                } else {
                    y = apply_coface(v_, ++level, i, y);
                }
            }
            const Element w = forms.whitney(image);
            for (std::size_t c = 0; c < y.size(); ++c) r.levels[n][c] += join(n, c, n, y[c], w);
        }
    }
    return r;
}

std::vector<LevelElement> TwModel::integrate(const TwElement& a) const {
    std::vector<LevelElement> out;
    for (int k = 0; k <= depth(); ++k) {
        const auto& forms = simplex_forms(k);
        LevelElement lv;
        for (std::size_t c = 0; c < v_.levels[k].size(); ++c) {
            Element acc(v_.levels[k][c].algebra);
            for (const auto& [om, v] : split(k, c, k, a.levels[k][c])) {
                bool top = true;
                for (int i = 0; i < k; ++i) top = top && om[k + i] == 1;
                if (top) acc += v.scaled(dsi::integrate(forms, Element(forms.algebra(), om)));
            }
            lv.push_back(std::move(acc));
        }
        out.push_back(std::move(lv));
    }
    return out;
}

using detail::cut_out;
using detail::level_slices;
using detail::subspace_complex;
using detail::DegreeSlices;

namespace {

Monomial combine(const Algebra& a, int m, const Monomial& am, const Monomial& om) {
    const std::size_t nv = a.nvars(), ng = a.ngens();
    Monomial out(nv + ng + 2 * m);
    for (std::size_t i = 0; i < nv; ++i) out[i] = am[i];
    for (int i = 0; i < m; ++i) out[nv + i] = om[i];
    for (std::size_t i = 0; i < ng; ++i) out[nv + m + i] = am[nv + i];
    for (int i = 0; i < m; ++i) out[nv + m + ng + i] = om[m + i];
    return out;
}

}  // namespace

TwElement TwSlice::element(const TwModel& m, int degree, std::span<const Rational> coords) const {
    const auto& s = spaces.at(degree);
    TwElement x = m.zero();
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] == 0) continue;
        for (std::size_t j = 0; j < s.ambient.size(); ++j) {
            const Rational c = coords[i] * s.basis[i][j];
            if (c == 0) continue;
            const auto& lm = s.ambient[j];
            x.levels[lm.level][lm.component].add_term(lm.monomial, c);
        }
    }
    return x;
}

std::optional<Vec> TwSlice::coords(const TwModel&, int degree, const TwElement& x) const {
    auto it = spaces.find(degree);
    if (it == spaces.end()) return std::nullopt;
    const auto& s = it->second;
    Vec v = zero_vec(s.ambient.size());
    for (std::size_t n = 0; n < x.levels.size(); ++n)
        for (std::size_t c = 0; c < x.levels[n].size(); ++c)
            for (const auto& [m, coef] : x.levels[n][c].terms()) {
                auto j = s.index.find(LevelMonomial{static_cast<int>(n), c, m});
                if (j == s.index.end()) return std::nullopt;
                v[j->second] += coef;
            }
    return s.coords(v);
}

TwSlice tw(const TwModel& m, int weight, int p_max) {
    const auto& v = m.diagram();
    const int depth = m.depth();
    TwSlice out;
    out.weight = weight;
    out.p_max = p_max;
    int alo, ahi;
    const DegreeSlices slices = level_slices(v, weight, alo, ahi);
    const int lo = alo, hi = ahi + depth;

    for (int deg = lo; deg <= hi; ++deg) {
        AmbientSubspace& s = out.spaces[deg];
        for (int n = 0; n <= depth; ++n) {
            const auto fb = simplex_forms(n).basis(p_max);
            for (std::size_t c = 0; c < v.levels[n].size(); ++c)
                for (const auto& [q, ams] : slices[n][c]) {
                    auto it = fb.find(deg - q);
                    if (it == fb.end()) continue;
                    for (const auto& am : ams)
                        for (const auto& om : it->second)
                            s.ambient.push_back({n, c, combine(*v.levels[n][c].algebra, n, am, om)});
                }
        }
        cut_out(s, [&](const LevelMonomial& lm) {
            TwElement x = m.zero();
            x.levels[lm.level][lm.component].add_term(lm.monomial, 1);
            return m.equalizer_residuals(x);
        });
    }
    if (hi < lo) {
        out.spaces[0];
        out.complex = SlicedComplex{0, {0}, {}, {{}}};
        return out;
    }
    out.complex = subspace_complex(out.spaces, lo, hi, [&](int deg, const Vec& b) {
        const auto& s = out.spaces.at(deg);
        TwElement x = m.zero();
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) x.levels[s.ambient[j].level][s.ambient[j].component].add_term(s.ambient[j].monomial, b[j]);
        const TwElement dx = m.differential(x);
        const auto& t = out.spaces.at(deg + 1);
        Vec img = zero_vec(t.ambient.size());
        for (std::size_t n = 0; n < dx.levels.size(); ++n)
            for (std::size_t c = 0; c < dx.levels[n].size(); ++c)
                for (const auto& [mono, coef] : dx.levels[n][c].terms()) {
                    auto j = t.index.find(LevelMonomial{static_cast<int>(n), c, mono});
                    if (j == t.index.end()) throw SliceError("differential leaves the form-degree cap");
                    img[j->second] += coef;
                }
        return img;
    });
    return out;
}

namespace {

std::vector<Vec> matrix_columns(std::size_t n, auto&& column) {
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < n; ++j) cols.push_back(column(j));
    return cols;
}

}  // namespace

RetractionReport check_retraction(const TwModel& m, int weight, int p_max) {
    RetractionReport rep;
    rep.weight = weight;
    rep.p_max = p_max;
    const TwSlice t = tw(m, weight, p_max);
    const TotSlice s = tot(m, weight);
    if (t.complex.square_defect() || s.complex.square_defect()) {
        rep.square_zero = false;
        rep.failures.push_back("differential does not square to zero");
        return rep;
    }
    for (const auto& d : cohomology(t.complex, false).degrees)
        if (d.dim) rep.h_tw[d.degree] = d.dim;
    for (const auto& d : cohomology(s.complex, false).degrees)
        if (d.dim) rep.h_tot[d.degree] = d.dim;

    const int lo = std::min(t.complex.lo, s.complex.lo);
    const int hi = std::max(t.complex.hi(), s.complex.hi());
    auto tw_dim = [&](int n) { return n >= t.complex.lo && n <= t.complex.hi() ? t.complex.dim(n) : std::size_t{0}; };
    auto tot_dim = [&](int n) { return n >= s.complex.lo && n <= s.complex.hi() ? s.complex.dim(n) : std::size_t{0}; };

    std::map<int, RatMatrix> i_map, p_map;
    for (int n = lo; n <= hi; ++n) {
        const std::size_t dt = tw_dim(n), ds = tot_dim(n);
        i_map[n] = RatMatrix::from_columns(dt, matrix_columns(ds, [&](std::size_t j) {
            Vec e = zero_vec(ds);
            e[j] = 1;
            const auto x = s.element(m, n, e);
            TwElement y = m.zero();
            for (int k = 0; k <= m.depth(); ++k) y = m.add(y, m.whitney(k, x[k]));
            auto c = t.coords(m, n, y);
            if (!c) {
                rep.i_chain_map = false;
                rep.failures.push_back("Whitney image outside the equalizer in degree " + std::to_string(n));
                return zero_vec(dt);
            }
            return *c;
        }));
        p_map[n] = RatMatrix::from_columns(ds, matrix_columns(dt, [&](std::size_t j) {
            Vec e = zero_vec(dt);
            e[j] = 1;
            auto c = s.coords(m, n, m.integrate(t.element(m, n, e)));
            if (!c) {
                rep.p_chain_map = false;
                rep.failures.push_back("integration leaves the normalized complex in degree " + std::to_string(n));
                return zero_vec(ds);
            }
            return *c;
        }));
    }
    auto d_tw = [&](int n) { return t.complex.d(n); };
    auto d_tot = [&](int n) { return s.complex.d(n); };
    for (int n = lo; n < hi; ++n) {
        if (!(i_map[n + 1] * d_tot(n) == d_tw(n) * i_map[n])) {
            rep.i_chain_map = false;
            rep.failures.push_back("I is not a chain map in degree " + std::to_string(n));
        }
        if (!(p_map[n + 1] * d_tw(n) == d_tot(n) * p_map[n])) {
            rep.p_chain_map = false;
            rep.failures.push_back("P is not a chain map in degree " + std::to_string(n));
        }
    }
    for (int n = lo; n <= hi; ++n)
        if (!(p_map[n] * i_map[n] == RatMatrix::identity(tot_dim(n)))) {
            rep.pi_identity = false;
            rep.failures.push_back("P I is not the identity in degree " + std::to_string(n));
        }

    std::vector<RatMatrix> f;
    for (int n = t.complex.lo; n <= t.complex.hi(); ++n)
        f.push_back(i_map[n] * p_map[n] - RatMatrix::identity(tw_dim(n)));
    if (!null_homotopy(t.complex, f)) {
        rep.homotopy = false;
        rep.failures.push_back("I P - id is not null-homotopic");
    }
    return rep;
}

bool tw_stable(const TwModel& m, int weight, int p_max) {
    auto dims = [&](int p) {
        std::map<int, std::size_t> h;
        for (const auto& d : cohomology(tw(m, weight, p).complex, false).degrees)
            if (d.dim) h[d.degree] = d.dim;
        return h;
    };
    return dims(p_max) == dims(p_max + 1);
}

}  // namespace dsi
