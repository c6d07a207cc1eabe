#include "perlab/dynamics.hpp"

#include "perlab/modpoly.hpp"
#include "perlab/roots.hpp"

#include <algorithm>
#include <sstream>

namespace perlab {

// ---------- ProjPoint ----------

ProjPoint ProjPoint::infinity() {
    ProjPoint p;
    p.x_ = 1;
    p.y_ = 0;
    return p;
}

ProjPoint ProjPoint::rational(const BigRat& z) {
    ProjPoint p;
    p.x_ = z.get_num();
    p.y_ = z.get_den();
    return p;
}

ProjPoint ProjPoint::rational_pair(BigInt px, BigInt py) {
    if (px == 0 && py == 0) throw ValidationError("ProjPoint: both coordinates zero");
    BigInt g;
    mpz_gcd(g.get_mpz_t(), px.get_mpz_t(), py.get_mpz_t());
    px /= g;
    py /= g;
    if (py < 0 || (py == 0 && px < 0)) {
        px = -px;
        py = -py;
    }
    ProjPoint p;
    p.x_ = std::move(px);
    p.y_ = std::move(py);
    return p;
}

ProjPoint ProjPoint::algebraic(ZPoly minpoly, int root_index) {
    if (minpoly.degree() < 1) throw ValidationError("ProjPoint: constant minimal polynomial");
    if (root_index < 0 || root_index > minpoly.degree() - 1)
        throw ValidationError("ProjPoint: root index out of range");
    if (minpoly.degree() == 1) {
        // rational after all
        return rational_pair(-minpoly[0], minpoly[1]);
    }
    ProjPoint p;
    p.algebraic_ = true;
    p.m_ = zp_primitive(minpoly);
    p.idx_ = root_index;
    return p;
}

BigRat ProjPoint::affine() const {
    if (!is_rational() || is_infinity()) throw ValidationError("affine: not a finite rational point");
    BigRat r(x_, y_);
    r.canonicalize();
    return r;
}

bool ProjPoint::operator==(const ProjPoint& o) const {
    if (algebraic_ != o.algebraic_) return false;
    if (algebraic_) return m_ == o.m_ && idx_ == o.idx_;
    return x_ == o.x_ && y_ == o.y_;
}

bool ProjPoint::operator<(const ProjPoint& o) const {
    if (algebraic_ != o.algebraic_) return !algebraic_;
    if (algebraic_) {
        if (m_.coeffs() != o.m_.coeffs()) return m_.coeffs() < o.m_.coeffs();
        return idx_ < o.idx_;
    }
    if (x_ != o.x_) return x_ < o.x_;
    return y_ < o.y_;
}

std::string ProjPoint::to_string() const {
    if (is_infinity()) return "inf";
    if (is_rational()) return rational_string(affine());
    std::ostringstream os;
    os << "root#" << idx_ << " of " << m_.to_string("z");
    return os.str();
}

std::complex<double> ProjPoint::embed(int precision_bits) const {
    if (is_infinity()) throw ValidationError("embed: point at infinity has no finite-chart value");
    if (is_rational()) return std::complex<double>(affine().get_d(), 0.0);
    auto roots = complex_roots(m_, precision_bits);
    return roots[static_cast<size_t>(idx_)].z;
}

// ---------- form helpers (slot vectors over Z) ----------

namespace {

using Form = std::vector<BigInt>;  // slot i = coeff of X^i Y^(D-i); size = D+1

Form form_from_poly(const Poly& p) {
    auto [unit, zp] = p.to_zpoly();
    // caller handles joint unit; here we need raw integer slots of p itself
    Form f(static_cast<size_t>(p.degree()) + 1);
    for (int i = 0; i <= p.degree(); ++i) {
        const BigRat& c = p.coeff(i);
        if (c.get_den() != 1) throw ValidationError("form_from_poly: non-integer coefficient");
        f[static_cast<size_t>(i)] = c.get_num();
    }
    return f;
}

Poly poly_from_form(const Form& f) {
    std::vector<BigRat> c;
    c.reserve(f.size());
    for (const auto& x : f) c.emplace_back(x);
    return Poly::homogeneous(std::move(c));
}

Form form_mul(const Form& a, const Form& b) {
    Form r(a.size() + b.size() - 1, BigInt(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

Form form_scale_add(Form r, const Form& a, const BigInt& s) {
    if (r.size() < a.size()) r.resize(a.size(), BigInt(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += s * a[i];
    return r;
}

// F(A, B) for a degree-d form F and forms A, B of equal degree.
Form form_compose(const Form& F, const Form& A, const Form& B) {
    size_t d = F.size() - 1;
    // powers A^i, B^(d-i)
    std::vector<Form> apow(d + 1), bpow(d + 1);
    apow[0] = Form{BigInt(1)};
    bpow[0] = Form{BigInt(1)};
    for (size_t i = 1; i <= d; ++i) {
        apow[i] = form_mul(apow[i - 1], A);
        bpow[i] = form_mul(bpow[i - 1], B);
    }
    size_t inner = A.size() - 1;  // degree of A and B
    Form result(d * inner + 1, BigInt(0));
    for (size_t i = 0; i <= d; ++i) {
        if (F[i] == 0) continue;
        Form term = form_mul(apow[i], bpow[d - i]);
        result = form_scale_add(std::move(result), term, F[i]);
    }
    return result;
}

// dehomogenized x-part and the Y-order (top zero slots)
std::pair<ZPoly, int> form_dehom(const Form& f) {
    int top = static_cast<int>(f.size()) - 1;
    while (top >= 0 && f[static_cast<size_t>(top)] == 0) --top;
    std::vector<BigInt> c(f.begin(), f.begin() + top + 1);
    return {ZPoly(std::move(c)), static_cast<int>(f.size()) - 1 - top};
}

void joint_primitivize(Form& a, Form& b) {
    BigInt g = 0;
    for (const auto& x : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    for (const auto& x : b) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 0) throw ValidationError("joint_primitivize: zero pair");
    if (g == 1) return;
    for (auto& x : a) x /= g;
    for (auto& x : b) x /= g;
}

// certified coprimality of the projective pair (no common root)
bool forms_coprime(const Form& A, const Form& B) {
    auto [fa, ya] = form_dehom(A);
    auto [fb, yb] = form_dehom(B);
    if (ya > 0 && yb > 0) return false;
    if (fa.is_zero() || fb.is_zero()) return false;
    if (fa.degree() == 0 || fb.degree() == 0) return true;
    // one good modular image certifies a trivial gcd
    std::uint64_t p = 1000003;
    for (int tries = 0; tries < 5; ++tries) {
        BigInt bp(static_cast<unsigned long>(p));
        if (fa.leading() % bp != 0 && fb.leading() % bp != 0) {
            ModPoly g = mp_gcd(ModPoly::from_zpoly(fa, p), ModPoly::from_zpoly(fb, p));
            if (g.degree() == 0) return true;
        }
        p = next_prime_u64(p + 1);
    }
    return zp_gcd(fa, fb).degree() == 0;
}

// Wronskian F_X G_Y - F_Y G_X as a form of degree 2d-2.
Form wronskian(const Form& F, const Form& G) {
    int D = static_cast<int>(F.size()) - 1;
    auto dx = [D](const Form& f) {
        Form r(static_cast<size_t>(D), BigInt(0));
        for (int i = 1; i <= D; ++i) r[static_cast<size_t>(i - 1)] = BigInt(i) * f[static_cast<size_t>(i)];
        return r;
    };
    auto dy = [D](const Form& f) {
        Form r(static_cast<size_t>(D), BigInt(0));
        for (int i = 0; i < D; ++i) r[static_cast<size_t>(i)] = BigInt(D - i) * f[static_cast<size_t>(i)];
        return r;
    };
    Form fx = dx(F), fy = dy(F), gx = dx(G), gy = dy(G);
    Form t1 = form_mul(fx, gy), t2 = form_mul(fy, gx);
    Form w(t1.size(), BigInt(0));
    for (size_t i = 0; i < w.size(); ++i) w[i] = t1[i] - t2[i];
    return w;
}

Form map_form_F(const RationalMap& f) { return form_from_poly(f.F()); }
Form map_form_G(const RationalMap& f) { return form_from_poly(f.G()); }

// multiplicity of a point as a root of a form
int form_root_multiplicity(const Form& w, const ProjPoint& x) {
    auto [h, yord] = form_dehom(w);
    if (x.is_infinity()) return yord;
    if (x.is_rational()) {
        BigRat a = x.affine();
        int mult = 0;
        ZPoly cur = h;
        // divide out (py*z - px) while it vanishes at a; primitive linear
        // factors divide exactly over Z by Gauss
        ZPoly lin(std::vector<BigInt>{-x.px(), x.py()});
        while (cur.degree() >= 1 && zp_eval(cur, a) == 0) {
            cur = zp_div_exact(cur, lin);
            ++mult;
        }
        return mult;
    }
    // algebraic: largest k with minpoly^k | h (conjugates share the order)
    const ZPoly& m = x.minpoly();
    int mult = 0;
    ZPoly cur = h;
    while (!cur.is_zero() && cur.degree() >= m.degree() && zp_divides(m, cur)) {
        cur = zp_div_exact(cur, m);
        ++mult;
    }
    return mult;
}

}  // namespace

// ---------- RationalMap ----------

std::string RationalMap::id() const {
    std::ostringstream os;
    os << "[" << F_.to_string() << " : " << G_.to_string() << "]";
    return os.str();
}

RationalMap make_map(const Poly& F, const Poly& G) {
    if (F.form() != PolyForm::Homogeneous || G.form() != PolyForm::Homogeneous)
        throw FormMismatchError("make_map: homogeneous forms required");
    if (F.degree() != G.degree()) throw ValidationError("make_map: degrees differ");
    if (F.degree() < 2) throw ValidationError("make_map: degree must be >= 2");
    if (F.is_zero() || G.is_zero()) throw ValidationError("make_map: zero form");

    // clear denominators jointly (same scalar on both components)
    BigInt den = 1;
    for (const auto& c : F.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    for (const auto& c : G.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    auto scale = [&den](const Poly& p) {
        Form f(static_cast<size_t>(p.degree()) + 1);
        for (int i = 0; i <= p.degree(); ++i) {
            const BigRat& c = p.coeff(i);
            f[static_cast<size_t>(i)] = c.get_num() * (den / c.get_den());
        }
        return f;
    };
    Form fF = scale(F), fG = scale(G);
    joint_primitivize(fF, fG);

    if (!forms_coprime(fF, fG))
        throw ValidationError("make_map: resultant is zero (not a morphism)");

    RationalMap m;
    m.F_ = poly_from_form(fF);
    m.G_ = poly_from_form(fG);
    m.d_ = F.degree();
    std::tie(m.fnum_, m.ynum_) = form_dehom(fF);
    std::tie(m.fden_, m.yden_) = form_dehom(fG);
    return m;
}

RationalMap iterate_map(const RationalMap& f, int n, long degree_cap) {
    if (n < 1) throw ValidationError("iterate_map: n must be >= 1");
    Form F = map_form_F(f), G = map_form_G(f);
    Form Fn = F, Gn = G;
    long deg = f.degree();
    for (int k = 1; k < n; ++k) {
        deg *= f.degree();
        if (deg > degree_cap) throw DegreeCapError("iterate_map: degree cap exceeded");
        Form nf = form_compose(F, Fn, Gn);
        Form ng = form_compose(G, Fn, Gn);
        joint_primitivize(nf, ng);
        Fn = std::move(nf);
        Gn = std::move(ng);
    }
    if (!forms_coprime(Fn, Gn)) throw Error("iterate_map: common factor appeared (internal)");
    RationalMap m;
    m.F_ = poly_from_form(Fn);
    m.G_ = poly_from_form(Gn);
    m.d_ = static_cast<int>(deg);
    std::tie(m.fnum_, m.ynum_) = form_dehom(Fn);
    std::tie(m.fden_, m.yden_) = form_dehom(Gn);
    return m;
}

ProjPoint apply_map(const RationalMap& f, const ProjPoint& x) {
    Form F = map_form_F(f), G = map_form_G(f);
    if (x.is_rational()) {
        // evaluate forms at (px, py)
        auto eval_form = [&](const Form& h) {
            BigInt r = 0;
            BigInt xp = 1;
            std::vector<BigInt> yp(h.size());
            BigInt cur = 1;
            for (size_t i = 0; i < h.size(); ++i) {
                yp[h.size() - 1 - i] = cur;
                cur *= x.py();
            }
            for (size_t i = 0; i < h.size(); ++i) {
                if (h[i] != 0) r += h[i] * xp * yp[i];
                xp *= x.px();
            }
            return r;
        };
        return ProjPoint::rational_pair(eval_form(F), eval_form(G));
    }
    // algebraic point: image minimal polynomial via resultant interpolation
    const ZPoly& m = x.minpoly();
    const ZPoly& fn = f.fnum();
    const ZPoly& fd = f.fden();
    // account for Y-orders: f(x) = fn(x)/fd(x) on finite points (x finite, not
    // a pole unless fd(x) = 0). Y factors only matter at infinity.
    if (zp_divides(m, fd)) {
        // denominator vanishes on the whole orbit: image is infinity
        return ProjPoint::infinity();
    }
    // D(w) = prod_i (w*fd(alpha_i) - fn(alpha_i)) via resultants: for each
    // sample w0, Res(m, h) = lc(m)^(deg h) * prod h(alpha_i); normalize away
    // the lc power so the samples interpolate one degree-dm polynomial
    int dm = m.degree();
    std::vector<BigRat> xs, ys;
    for (int w = 0; static_cast<int>(xs.size()) < dm + 1; ++w) {
        ZPoly h = BigInt(w) * fd - fn;
        BigRat val(0);
        if (!h.is_zero()) {
            val = BigRat(zp_resultant(m, h));
            BigRat lcm_pow(1);
            for (int i = 0; i < h.degree(); ++i) lcm_pow *= BigRat(m.leading());
            val /= lcm_pow;
            val.canonicalize();
        }
        xs.emplace_back(w);
        ys.push_back(val);
    }
    std::vector<BigRat> acc(xs.size(), BigRat(0));
    for (size_t i = 0; i < xs.size(); ++i) {
        std::vector<BigRat> basis{BigRat(1)};
        BigRat denom(1);
        for (size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            std::vector<BigRat> nb(basis.size() + 1, BigRat(0));
            for (size_t k = 0; k < basis.size(); ++k) {
                nb[k + 1] += basis[k];
                nb[k] -= xs[j] * basis[k];
            }
            basis = std::move(nb);
            denom *= xs[i] - xs[j];
        }
        BigRat wgt = ys[i] / denom;
        for (size_t k = 0; k < basis.size(); ++k) acc[k] += wgt * basis[k];
    }
    BigInt den = 1;
    for (const auto& c : acc) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<BigInt> ic;
    for (const auto& c : acc) ic.push_back(BigInt(c.get_num() * (den / c.get_den())));
    ZPoly D(std::move(ic));
    if (D.is_zero()) throw Error("apply_map: degenerate image polynomial");
    ZPoly img = zp_squarefree_part(D);  // irreducible: single Galois orbit
    if (img.degree() == 1) return ProjPoint::rational_pair(-img[0], img[1]);

    // root index by numeric matching, escalating precision on ambiguity
    for (int bits = 64; bits <= 1024; bits *= 2) {
        std::complex<double> xi = x.embed(bits);
        auto roots = complex_roots(img, bits);
        std::complex<double> num(0, 0), denv(0, 0);
        for (int i = fn.degree(); i >= 0; --i) num = num * xi + std::complex<double>(fn[i].get_d(), 0);
        for (int i = fd.degree(); i >= 0; --i) denv = denv * xi + std::complex<double>(fd[i].get_d(), 0);
        std::complex<double> img_val = num / denv;
        int best = -1, second = -1;
        double bestd = 0, secondd = 0;
        for (size_t i = 0; i < roots.size(); ++i) {
            double dd = std::abs(roots[i].z - img_val);
            if (best < 0 || dd < bestd) {
                second = best;
                secondd = bestd;
                best = static_cast<int>(i);
                bestd = dd;
            } else if (second < 0 || dd < secondd) {
                second = static_cast<int>(i);
                secondd = dd;
            }
        }
        if (second < 0 || bestd * 4 < secondd) return ProjPoint::algebraic(img, best);
    }
    throw ResourceError("apply_map: could not disambiguate image root index");
}

int ramification(const RationalMap& f, const ProjPoint& x) {
    Form W = wronskian(map_form_F(f), map_form_G(f));
    return 1 + form_root_multiplicity(W, x);
}

MultiplicityRecord kappa_minus(const RationalMap& f, int n, const ProjPoint& a, long degree_cap) {
    if (n < 1) throw ValidationError("kappa_minus: n must be >= 1");
    if (!a.is_rational()) throw ValidationError("kappa_minus: rational target required");
    RationalMap fn = iterate_map(f, n, degree_cap);
    // preimage form P = a_y * F_n - a_x * G_n
    Form F = map_form_F(fn), G = map_form_G(fn);
    Form P(F.size(), BigInt(0));
    for (size_t i = 0; i < P.size(); ++i) P[i] = a.py() * F[i] - a.px() * G[i];
    auto [p, yord] = form_dehom(P);
    if (p.is_zero()) throw Error("kappa_minus: degenerate preimage form");

    long kappa = yord;  // multiplicity of infinity as a preimage
    std::optional<ProjPoint> witness;
    if (yord >= 1) witness = ProjPoint::infinity();

    std::vector<ZPoly> parts = zp_yun(p);
    for (size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].degree() < 1) continue;
        long mult = static_cast<long>(i) + 1;
        if (mult > kappa) {
            kappa = mult;
            // name a witness if the part is small enough to factor cheaply
            if (parts[i].degree() <= 64) {
                auto irr = zp_factor_squarefree(parts[i]);
                witness = ProjPoint::algebraic(irr.front(), 0);
            } else {
                witness.reset();
            }
        }
    }
    if (kappa == 0) kappa = 1;  // no multiple point and no infinity order: all simple
    if (kappa == 1 && !witness) {
        // all preimages attain it; name a rational one when the polynomial has one
        // (cheap check: degree-1 factor of the lowest Yun part would need a
        // factorization; skip unless the whole polynomial is small)
        if (p.degree() <= 64) {
            auto irr = zp_factor_squarefree(zp_squarefree_part(p));
            witness = ProjPoint::algebraic(irr.front(), 0);
        }
    }
    return MultiplicityRecord{n, witness, kappa};
}

namespace {

// defining squarefree form of a finite Galois-stable point set
Form stable_set_form(const std::vector<ProjPoint>& pts) {
    Form acc{BigInt(1)};
    for (const auto& p : pts) {
        if (p.is_rational()) {
            // q X - p Y
            acc = form_mul(acc, Form{-p.px(), p.py()});
        } else {
            // homogenized minimal polynomial (conjugates enter together)
            Form m(p.minpoly().coeffs());
            acc = form_mul(acc, m);
        }
    }
    return acc;
}

bool totally_invariant(const Form& F, const Form& G, const Form& s) {
    // s(F, G) must have squarefree part equal to s up to sign
    Form pulled = form_compose(s, F, G);
    auto [ph, pyord] = form_dehom(pulled);
    auto [sh, syord] = form_dehom(s);
    if ((pyord > 0) != (syord > 0)) return false;
    if (ph.is_zero() != sh.is_zero()) return false;
    if (!sh.is_zero()) {
        ZPoly sf = zp_squarefree_part(ph);
        if (!(sf == zp_primitive(sh))) return false;
    }
    return true;
}

}  // namespace

std::vector<ProjPoint> exceptional_set(const RationalMap& f) {
    int d = f.degree();
    Form F = map_form_F(f), G = map_form_G(f);
    Form W = wronskian(F, G);
    auto [wh, wyord] = form_dehom(W);

    // candidates: points where f is totally ramified (Wronskian order d-1)
    std::vector<ProjPoint> candidates;
    if (wyord >= d - 1) candidates.push_back(ProjPoint::infinity());
    if (!wh.is_zero() && wh.degree() >= 0) {
        std::vector<ZPoly> parts = zp_yun(wh);
        if (static_cast<int>(parts.size()) >= d - 1 && parts[static_cast<size_t>(d - 2)].degree() >= 1) {
            // part with exact multiplicity d-1; degree <= 2
            const ZPoly& part = parts[static_cast<size_t>(d - 2)];
            for (const auto& irr : zp_factor_squarefree(part)) {
                if (irr.degree() == 1) {
                    candidates.push_back(ProjPoint::rational_pair(-irr[0], irr[1]));
                } else if (irr.degree() == 2) {
                    candidates.push_back(ProjPoint::algebraic(irr, 0));
                    candidates.push_back(ProjPoint::algebraic(irr, 1));
                }
            }
        }
    }

    // group candidates into Galois atoms (rational points; conjugate pairs)
    struct Atom {
        std::vector<ProjPoint> pts;
    };
    std::vector<Atom> atoms;
    for (size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i].is_rational()) {
            atoms.push_back({{candidates[i]}});
        } else if (candidates[i].root_index() == 0) {
            Atom a;
            a.pts.push_back(candidates[i]);
            for (size_t j = 0; j < candidates.size(); ++j)
                if (j != i && !candidates[j].is_rational() && candidates[j].minpoly() == candidates[i].minpoly() &&
                    candidates[j].root_index() != 0)
                    a.pts.push_back(candidates[j]);
            atoms.push_back(std::move(a));
        }
    }

    // check all Galois-stable subsets of total size <= 2, take the union
    std::vector<ProjPoint> result;
    auto add_if_invariant = [&](const std::vector<ProjPoint>& pts) {
        Form s = stable_set_form(pts);
        if (totally_invariant(F, G, s)) {
            for (const auto& p : pts)
                if (std::find(result.begin(), result.end(), p) == result.end()) result.push_back(p);
        }
    };
    size_t na = atoms.size();
    for (size_t mask = 1; mask < (1u << na); ++mask) {
        std::vector<ProjPoint> pts;
        for (size_t i = 0; i < na; ++i)
            if (mask & (1u << i))
                for (const auto& p : atoms[i].pts) pts.push_back(p);
        if (pts.size() > 2) continue;
        add_if_invariant(pts);
    }
    std::sort(result.begin(), result.end());
    return result;
}

bool in_exceptional_set(const RationalMap& f, const ProjPoint& a) {
    auto e = exceptional_set(f);
    return std::find(e.begin(), e.end(), a) != e.end();
}

ProductMap product_map(const std::vector<RationalMap>& maps) {
    if (maps.empty()) throw ValidationError("product_map: at least one component required");
    int d = maps.front().degree();
    for (const auto& m : maps)
        if (m.degree() != d) throw ValidationError("product_map: mixed degrees (not polarized)");
    ProductMap pm;
    pm.components = maps;
    pm.k = static_cast<int>(maps.size());
    pm.d = d;
    return pm;
}

bool in_exceptional_guard(const ProductMap& fg, const ProjPoint& a, const ProjPoint& b) {
    if (fg.k != 2) throw ValidationError("in_exceptional_guard: k = 2 expected");
    return in_exceptional_set(fg.components[0], a) || in_exceptional_set(fg.components[1], b);
}

}  // namespace perlab
