#include "ecred/shape.hpp"

#include <algorithm>
#include <cmath>

namespace ecred {

namespace {

// Sturm chain of a separable monic cubic, evaluated exactly at rationals.
struct SturmChain {
    MonicCubic f;
    // s2 = alpha x + beta, s3 = constant (both negated Euclid remainders)
    Rat s2a, s2b, s3;

    explicit SturmChain(const MonicCubic& fin) : f(fin) {
        // rem(f, f') = ((18b - 6a^2) x + (27c - 3ab)) / 27
        s2a = Rat(6 * fin.a * fin.a - 18 * fin.b, 27);
        s2b = Rat(3 * fin.a * fin.b - 27 * fin.c, 27);
        s2a.canonicalize();
        s2b.canonicalize();
        if (s2a != 0) {
            // rem(f', s2): evaluate f' at the root -s2b/s2a
            Rat r = -s2b / s2a;
            s3 = -(Rat(3) * r * r + Rat(2 * fin.a) * r + Rat(fin.b));
        } else {
            s3 = 0;
        }
    }

    int variations(const Rat& x) const {
        Rat v0 = ((Rat(x) + f.a) * x + f.b) * x + f.c;
        Rat v1 = (Rat(3) * x + 2 * f.a) * x + f.b;
        Rat v2 = s2a * x + s2b;
        std::array<int, 4> sg = {sgn(v0), sgn(v1), sgn(v2), sgn(s3)};
        int var = 0, prev = 0;
        for (int s : sg) {
            if (s == 0)
                continue;
            if (prev != 0 && s != prev)
                ++var;
            prev = s;
        }
        return var;
    }

    int count_in(const Rat& lo, const Rat& hi) const { return variations(lo) - variations(hi); }
};

// certified real-root enclosures by exact Sturm bisection
std::vector<Interval> real_roots(const MonicCubic& f) {
    if (f.disc() == 0)
        throw std::domain_error("real_roots: disc = 0");
    SturmChain chain(f);
    Int M = 2 + abs_int(f.a) + abs_int(f.b) + abs_int(f.c); // Cauchy bound
    Rat lo(-M), hi(M);
    int total = chain.count_in(lo, hi);
    if (total != 1 && total != 3)
        throw std::logic_error("real_roots: unexpected real root count");
    struct Box {
        Rat lo, hi;
        int n;
    };
    std::vector<Box> work = {{lo, hi, total}}, isolated;
    while (!work.empty()) {
        Box b = work.back();
        work.pop_back();
        if (b.n == 0)
            continue;
        if (b.n == 1) {
            isolated.push_back(b);
            continue;
        }
        Rat mid = (b.lo + b.hi) / 2;
        // nudge off a root: a rational midpoint could be the root itself
        while (((Rat(mid) + f.a) * mid + f.b) * mid + f.c == 0)
            mid += (b.hi - b.lo) / 257;
        int left = chain.count_in(b.lo, mid);
        work.push_back({b.lo, mid, left});
        work.push_back({mid, b.hi, b.n - left});
    }
    std::vector<Interval> roots;
    for (Box& b : isolated) {
        // bisect the bracket down to ~2^-120 of its scale
        for (int it = 0; it < 160; ++it) {
            Rat mid = (b.lo + b.hi) / 2;
            Rat fm = ((Rat(mid) + f.a) * mid + f.b) * mid + f.c;
            if (fm == 0) {
                // rational root: pin an exact tiny bracket around it
                Rat eps = (b.hi - b.lo) / pow_int(Int(2), 140);
                b.lo = mid - eps;
                b.hi = mid + eps;
                break;
            }
            Rat flo = ((Rat(b.lo) + f.a) * b.lo + f.b) * b.lo + f.c;
            if (sgn(flo) * sgn(fm) < 0)
                b.hi = mid;
            else
                b.lo = mid;
        }
        roots.push_back(Interval::from_endpoints(b.lo, b.hi));
    }
    std::sort(roots.begin(), roots.end(),
              [](const Interval& x, const Interval& y) { return x.hi_d() < y.hi_d(); });
    for (size_t i = 0; i + 1 < roots.size(); ++i)
        if (!roots[i].certainly_less(roots[i + 1]))
            throw std::logic_error("real_roots: enclosures overlap");
    return roots;
}

} // namespace

bool is_irreducible_cubic(const MonicCubic& f) {
    if (f.disc() == 0)
        return false;
    if (f.c == 0)
        return false; // root 0
    // rational root must be an integer dividing c
    Int ac = abs_int(f.c);
    for (Int d = 1; d * d <= ac; ++d) {
        if (!mpz_divisible_p(ac.get_mpz_t(), d.get_mpz_t()))
            continue;
        Int cands[2] = {d, ac / d};
        for (const Int& cand : cands) {
            for (int s = -1; s <= 1; s += 2) {
                Int r = s * cand;
                if (f.eval(r) == 0)
                    return false;
            }
        }
    }
    return true;
}

TracelessLattice::TracelessLattice(const MonicCubic& f) {
    if (f.disc() == 0)
        throw std::domain_error("TracelessLattice: disc = 0");
    Int q;
    RingBasis O = maximal_order(f, &q);
    disc_field_ = q_and_d(f).disc_field;
    // integer traces of the basis vectors
    std::array<Int, 3> tr;
    for (int i = 0; i < 3; ++i) {
        Rat t = Rat(3) * O.rows[i][0] + Rat(-f.a) * O.rows[i][1] +
                Rat(f.a * f.a - 2 * f.b) * O.rows[i][2];
        if (t.get_den() != 1)
            throw std::logic_error("TracelessLattice: non-integral trace");
        tr[i] = t.get_num();
    }
    // kernel of (tr0, tr1, tr2) over Z: reduce the three cross vectors by
    // integer row operations to a 2-row basis, then certify completeness
    Int g = gcd(gcd(tr[0], tr[1]), tr[2]);
    std::array<Int, 3> a = {tr[0] / g, tr[1] / g, tr[2] / g};
    std::vector<std::array<Int, 3>> gens = {
        {a[1], -a[0], Int(0)}, {Int(0), a[2], -a[1]}, {a[2], Int(0), -a[0]}};
    // Hermite-style sweep on the first column, then the second
    auto reduce_pair = [](std::array<Int, 3>& x, std::array<Int, 3>& y, int col) {
        while (y[col] != 0) {
            Int qd;
            mpz_fdiv_q(qd.get_mpz_t(), x[col].get_mpz_t(), y[col].get_mpz_t());
            for (int k = 0; k < 3; ++k)
                x[k] -= qd * y[k];
            std::swap(x, y);
        }
    };
    reduce_pair(gens[0], gens[1], 0);
    reduce_pair(gens[0], gens[2], 0);
    // now gens[1], gens[2] have zero first column iff swaps ended there;
    // normalize: ensure exactly one generator has nonzero first column
    std::vector<std::array<Int, 3>> basis;
    std::array<Int, 3>* lead = nullptr;
    for (auto& gv : gens)
        if (gv[0] != 0) {
            if (!lead)
                lead = &gv;
            else
                throw std::logic_error("TracelessLattice: kernel sweep failed");
        }
    for (auto& gv : gens)
        if (&gv != lead && !(gv[0] == 0 && gv[1] == 0 && gv[2] == 0))
            basis.push_back(gv);
    if (lead)
        basis.insert(basis.begin(), *lead);
    // second sweep among rows with zero first column
    if (basis.size() == 3) {
        reduce_pair(basis[1], basis[2], 1);
        if (basis[2][1] == 0 && basis[2][2] != 0)
            reduce_pair(basis[1], basis[2], 2);
        if (!(basis[2][0] == 0 && basis[2][1] == 0 && basis[2][2] == 0))
            throw std::logic_error("TracelessLattice: rank > 2?");
        basis.pop_back();
    }
    if (basis.size() != 2)
        throw std::logic_error("TracelessLattice: expected rank 2 kernel");
    // completeness: [basis; w] unimodular for w with a . w = 1
    {
        Int g1, u, v;
        mpz_gcdext(g1.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a[0].get_mpz_t(),
                   a[1].get_mpz_t());
        Int g2, s, t;
        mpz_gcdext(g2.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g1.get_mpz_t(),
                   a[2].get_mpz_t());
        if (g2 != 1 && g2 != -1)
            throw std::logic_error("TracelessLattice: row not primitive");
        std::array<Int, 3> w = {s * u, s * v, t};
        Int det = basis[0][0] * (basis[1][1] * w[2] - basis[1][2] * w[1]) -
                  basis[0][1] * (basis[1][0] * w[2] - basis[1][2] * w[0]) +
                  basis[0][2] * (basis[1][0] * w[1] - basis[1][1] * w[0]);
        if (det != 1 && det != -1)
            throw std::logic_error("TracelessLattice: kernel basis incomplete");
    }
    coords_[0] = basis[0];
    coords_[1] = basis[1];

    // embeddings: power-basis coordinates of the two vectors
    std::array<std::array<Rat, 3>, 2> vec;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 3; ++k)
            vec[i][k] = Rat(basis[i][0]) * O.rows[0][k] + Rat(basis[i][1]) * O.rows[1][k] +
                        Rat(basis[i][2]) * O.rows[2][k];

    auto eval_at = [&](const std::array<Rat, 3>& vc, const Interval& x) {
        return Interval(vc[0]) + (Interval(vc[1]) + Interval(vc[2]) * x) * x;
    };

    std::vector<Interval> roots = real_roots(f);
    if (f.disc() > 0) {
        if (roots.size() != 3)
            throw std::logic_error("TracelessLattice: expected 3 real roots");
        std::array<Interval, 3> s0, s1;
        for (int j = 0; j < 3; ++j) {
            s0[j] = eval_at(vec[0], roots[j]);
            s1[j] = eval_at(vec[1], roots[j]);
        }
        g11_ = s0[0] * s0[0] + s0[1] * s0[1] + s0[2] * s0[2];
        g12_ = s0[0] * s1[0] + s0[1] * s1[1] + s0[2] * s1[2];
        g22_ = s1[0] * s1[0] + s1[1] * s1[1] + s1[2] * s1[2];
    } else {
        if (roots.size() != 1)
            throw std::logic_error("TracelessLattice: expected 1 real root");
        const Interval& r = roots[0];
        // quadratic cofactor x^2 + Bq x + Cq
        Interval Bq = Interval(f.a) + r;
        Interval Cq = Interval(f.b) + r * Bq;
        Interval re = -Bq / Interval(2l);
        Interval im2 = Cq - re * re; // (Im)^2 > 0
        // sigma1 real, sigma2 = u + i v with u = re-part of the evaluation
        auto embed2 = [&](const std::array<Rat, 3>& vc, Interval& u, Interval& v2) {
            // value at x = re + i*im: with x^2 = re^2 - im^2 + 2 re im i
            Interval c0(vc[0]), c1(vc[1]), c2(vc[2]);
            u = c0 + c1 * re + c2 * (re * re - im2);
            // imaginary part = im * (c1 + 2 c2 re); carry its square
            Interval w = c1 + Interval(2l) * c2 * re;
            v2 = im2 * w * w;
        };
        Interval u0, v20, u1, v21;
        embed2(vec[0], u0, v20);
        embed2(vec[1], u1, v21);
        Interval a0 = eval_at(vec[0], r), a1 = eval_at(vec[1], r);
        g11_ = a0 * a0 + Interval(2l) * (u0 * u0 + v20);
        g22_ = a1 * a1 + Interval(2l) * (u1 * u1 + v21);
        // <x, y> = s1(x)s1(y) + 2(Re x2 Re y2 + Im x2 Im y2); Im product via
        // im^2 * w0 * w1
        Interval w0 = Interval(vec[0][1]) + Interval(2l) * Interval(vec[0][2]) * re;
        Interval w1 = Interval(vec[1][1]) + Interval(2l) * Interval(vec[1][2]) * re;
        g12_ = a0 * a1 + Interval(2l) * (u0 * u1 + im2 * w0 * w1);
    }
}

Interval TracelessLattice::norm2(const Int& m, const Int& n) const {
    Interval M(m), N(n);
    return g11_ * M * M + Interval(2l) * g12_ * M * N + g22_ * N * N;
}

namespace {

// vectors (m, n), antipodal representatives, with Q(m,n) possibly below R2.
// Enumerates m >= 0; for m = 0 only n > 0.
template <class Fn>
void enumerate_candidates(const Interval& g11, const Interval& g12, const Interval& g22,
                          const Interval& R2, Fn&& fn) {
    // m^2 <= R2 * g22 / det, n bounded per m by the quadratic
    // TODO: move the loop-range arithmetic to intervals once field
    // discriminants beyond ~1e12 are in scope (double padding suffices below)
    Interval det = g11 * g22 - g12 * g12;
    double mbound = std::sqrt(std::max(0.0, (R2 * g22 / det).hi_d())) + 2;
    long mmax = static_cast<long>(mbound);
    double g11d = g11.hi_d(), g12lo = g12.lo_d(), g12hi = g12.hi_d(), g22d = g22.lo_d();
    double R2d = R2.hi_d();
    for (long m = 0; m <= mmax; ++m) {
        // solve g22 n^2 + 2 g12 m n + g11 m^2 <= R2 over n (double, padded)
        double A = g22d;
        double b1 = 2 * g12lo * m, b2 = 2 * g12hi * m;
        double Blo = std::min(b1, b2), Bhi = std::max(b1, b2);
        double C = g11d * m * m - R2d;
        double disc1 = Bhi * Bhi - 4 * A * C, disc2 = Blo * Blo - 4 * A * C;
        double disc = std::max(disc1, disc2);
        if (disc < 0)
            continue;
        double lo = (-Bhi - std::sqrt(disc)) / (2 * A) - 2;
        double hi = (-Blo + std::sqrt(disc)) / (2 * A) + 2;
        for (long n = static_cast<long>(std::floor(lo)); n <= static_cast<long>(std::ceil(hi));
             ++n) {
            if (m == 0 && n <= 0)
                continue;
            fn(Int(m), Int(n));
        }
    }
}

} // namespace

void TracelessLattice::minima(Interval& l1, Interval& l2) const {
    // start from the basis norms, grow until two independent vectors fit
    Interval best1 = g11_, best2 = g22_;
    Int m1 = 1, n1 = 0;
    if (g22_.hi_d() < g11_.lo_d()) {
        best1 = g22_;
        m1 = 0;
        n1 = 1;
        best2 = g11_;
    }
    // enumerate inside radius = best2 (squared) to find the true minima
    Interval R2 = best2;
    std::vector<std::pair<std::array<Int, 2>, Interval>> found;
    enumerate_candidates(g11_, g12_, g22_, R2, [&](const Int& m, const Int& n) {
        Interval q = norm2(m, n);
        if (!(q.lo_d() <= R2.hi_d()))
            return;
        found.push_back({{m, n}, q});
    });
    std::sort(found.begin(), found.end(),
              [](const auto& x, const auto& y) { return x.second.hi_d() < y.second.hi_d(); });
    // first minimum
    if (found.empty())
        throw std::logic_error("minima: enumeration found nothing");
    const auto& f1 = found.front();
    // second minimum: smallest independent from f1
    const Int &a = f1.first[0], &b = f1.first[1];
    Interval q2;
    bool got2 = false;
    for (size_t i = 1; i < found.size(); ++i) {
        const Int &c = found[i].first[0], &d = found[i].first[1];
        if (a * d - b * c == 0)
            continue;
        q2 = found[i].second;
        got2 = true;
        break;
    }
    if (!got2)
        throw std::logic_error("minima: no independent vector within radius");
    l1 = f1.second.sqrt();
    l2 = q2.sqrt();
    if (!(l1.width() <= std::ldexp(std::abs(l1.hi_d()), -40)) ||
        !(l2.width() <= std::ldexp(std::abs(l2.hi_d()), -40)))
        throw std::logic_error("minima: enclosure too wide");
}

Int TracelessLattice::count_primitive_below(const Interval& Y) const {
    Interval Y2 = Y * Y;
    Int count = 0;
    bool tie = false;
    enumerate_candidates(g11_, g12_, g22_, Y2, [&](const Int& m, const Int& n) {
        if (gcd(m, n) != 1)
            return;
        Interval q = norm2(m, n);
        if (q.certainly_less(Y2)) {
            ++count;
            return;
        }
        if (Y2.certainly_less(q))
            return;
        tie = true;
    });
    if (tie)
        throw std::logic_error("count_primitive_below: enclosure straddles Y");
    return count;
}

Shape shape(const MonicCubic& f) {
    if (!is_irreducible_cubic(f))
        throw std::domain_error("shape: reducible or degenerate cubic");
    TracelessLattice L(f);
    Shape s;
    L.minima(s.l1, s.l2);
    s.skewness = s.l2 / s.l1;
    return s;
}

Int count_traceless_primitive(const MonicCubic& f, const Rat& Y) {
    TracelessLattice L(f);
    return L.count_primitive_below(Interval(Y));
}

} // namespace ecred
