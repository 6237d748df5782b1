#include "toricjk/localization.hpp"

namespace toricjk {

MultiPoly sphere_pushforward(const WeightSystem& ws, const MultiPoly& x, const IntegerVector& e1) {
    const std::size_t k = ws.rank();
    if (x.nvars() != k || e1.size() != k) throw ValidationError("sphere_pushforward: dimension mismatch");

    std::vector<LinearFactor> factors;
    std::vector<const IntegerVector*> occupied;
    for (const auto& entry : ws.entries()) {
        if (entry.multiplicity == 0) continue;
        const Integer pairing = dot(entry.weight, e1);
        if (pairing == 0) throw PreconditionError("sphere_pushforward: a weight pairs to zero with e1");
        for (const auto* other : occupied) {
            const IntegerVector pair[2] = {*other, entry.weight};
            if (rank_of(std::span<const IntegerVector>(pair)) == 1 && dot(*other, entry.weight) < 0)
                throw PreconditionError("sphere_pushforward: two weights are negative multiples of each other");
        }
        occupied.push_back(&entry.weight);
        factors.push_back({ZPoly::linear(MultiPoly::linear_form(entry.weight), MultiPoly::constant(k, Rational(pairing))),
                           static_cast<unsigned>(entry.multiplicity)});
    }
    MultiPoly out = total_residue(substitute_line(x, e1), factors);
    if (!is_shift_invariant(out, e1))
        throw InvariantError("sphere_pushforward: result is not e1-shift invariant: " + out.to_string());
    return out;
}

MultiPoly colinear_pushforward(const WeightSystem& ws, const MultiPoly& x, const IntegerVector& e1) {
    const std::size_t k = ws.rank();
    if (x.nvars() != k || e1.size() != k) throw ValidationError("colinear_pushforward: dimension mismatch");

    // Occupied weights are l_j * w with w primitive and l_j > 0.
    IntegerVector w;
    Rational lead = 1;  // prod l_j^{n_j}
    unsigned long n = 0;
    for (const auto& entry : ws.entries()) {
        if (entry.multiplicity == 0) continue;
        if (w.empty()) w = make_primitive(entry.weight);
        const IntegerVector pair[2] = {w, entry.weight};
        if (rank_of(std::span<const IntegerVector>(pair)) != 1 || dot(w, entry.weight) <= 0)
            throw PreconditionError("colinear_pushforward: weights are not positively colinear");
        Integer l = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (w[i] != 0) {
                l = entry.weight[i] / w[i];
                break;
            }
        for (unsigned long m = 0; m < entry.multiplicity; ++m) lead *= l;
        n += entry.multiplicity;
    }
    if (n == 0) return MultiPoly(k);
    const Integer c = dot(w, e1);
    if (c == 0) throw PreconditionError("colinear_pushforward: weight pairs to zero with e1");

    // Denominator: lead * c^n * u^n with u = z + <w, xi>/c. Recentre the
    // numerator: xi + z e1 = (xi - <w, xi>/c e1) + u e1, with u as variable k+1.
    const MultiPoly wxi = MultiPoly::linear_form(w);
    std::vector<MultiPoly> images;
    for (std::size_t i = 0; i < k; ++i) {
        Exponent ui(k + 1, 0), xi(k + 1, 0);
        ui[k] = 1;
        xi[i] = 1;
        MultiPoly img = MultiPoly::monomial(xi);
        img.add_term(ui, Rational(e1[i]));
        for (const auto& [exp, coef] : wxi.terms()) {
            Exponent lifted(exp);
            lifted.push_back(0);
            img.add_term(lifted, -coef * Rational(e1[i]) / Rational(c));
        }
        images.push_back(std::move(img));
    }
    const MultiPoly shifted = substitute_variables(x, images);

    MultiPoly out(k);
    for (const auto& [exp, coef] : shifted.terms()) {
        if (exp[k] != n - 1) continue;
        out.add_term(Exponent(exp.begin(), exp.end() - 1), coef);
    }
    Rational denom = lead;
    for (unsigned long m = 0; m < n; ++m) denom *= c;
    return out * (1 / denom);
}

}  // namespace toricjk
