#include "ecred/charsum.hpp"

#include <stdexcept>

namespace ecred {

namespace {

uint64_t pow_u64(uint64_t p, unsigned k) {
    uint64_t r = 1;
    while (k--)
        r *= p;
    return r;
}

} // namespace

Cyclotomic::Cyclotomic(uint64_t p, unsigned k)
    : p_(p), N_(pow_u64(p, k)), k_(k), phi_(pow_u64(p, k - 1) * (p - 1)), c_(phi_, Int(0)) {}

Cyclotomic Cyclotomic::root(uint64_t p, unsigned k, uint64_t j) {
    Cyclotomic z(p, k);
    z.add_root(j, Int(1));
    return z;
}

Cyclotomic Cyclotomic::integer(uint64_t p, unsigned k, const Int& m) {
    Cyclotomic z(p, k);
    z.add_root(0, m);
    return z;
}

void Cyclotomic::add_root(uint64_t j, const Int& coeff) {
    j %= N_;
    if (j < phi_) {
        c_[j] += coeff;
        return;
    }
    // zeta^(phi + r) = -sum_{t=0}^{p-2} zeta^(r + t p^{k-1})
    uint64_t r = j - phi_;
    uint64_t step = N_ / p_;
    for (uint64_t t = 0; t + 1 < p_; ++t)
        c_[r + t * step] -= coeff;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    for (size_t i = 0; i < phi_; ++i)
        c_[i] += o.c_[i];
    return *this;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    Cyclotomic r(p_, k_);
    for (size_t i = 0; i < phi_; ++i) {
        if (c_[i] == 0)
            continue;
        for (size_t j = 0; j < phi_; ++j) {
            if (o.c_[j] == 0)
                continue;
            r.add_root(i + j, c_[i] * o.c_[j]);
        }
    }
    return r;
}

Cyclotomic Cyclotomic::conj() const {
    Cyclotomic r(p_, k_);
    for (size_t i = 0; i < phi_; ++i)
        if (c_[i] != 0)
            r.add_root((N_ - i) % N_, c_[i]);
    return r;
}

bool Cyclotomic::is_zero() const {
    for (const auto& x : c_)
        if (x != 0)
            return false;
    return true;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const { return c_ == o.c_; }

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < phi_; ++i)
        if (c_[i] != 0)
            return false;
    return true;
}

Int Cyclotomic::rational_value() const {
    if (!is_rational())
        throw std::logic_error("Cyclotomic::rational_value: not rational");
    return c_[0];
}

namespace {

// cos/sin enclosure of 2 pi j / N via Lipschitz padding around the midpoint
void trig_enclosure(uint64_t j, uint64_t N, Interval& co, Interval& si) {
    Interval theta = Interval::pi() * Interval(mpq_class(2 * (long)j, (long)N));
    mpq_class mid = (theta.lo_q() + theta.hi_q()) / 2;
    mpq_class rad = (theta.hi_q() - theta.lo_q()) / 2;
    mpfr_t m, c, s;
    mpfr_init2(m, Interval::default_precision());
    mpfr_init2(c, Interval::default_precision());
    mpfr_init2(s, Interval::default_precision());
    mpfr_set_q(m, mid.get_mpq_t(), MPFR_RNDN);
    mpfr_sin_cos(s, c, m, MPFR_RNDN);
    // |cos x - cos m| <= |x - m|, same for sin; add one ulp of slack
    mpq_class ulp(Int(1), pow_int(Int(2), Interval::default_precision() - 8));
    mpq_class padq = rad + ulp;
    mpq_t cq, sq;
    mpq_inits(cq, sq, nullptr);
    mpfr_get_q(cq, c);
    mpfr_get_q(sq, s);
    mpq_class cmid(cq), smid(sq);
    mpq_clears(cq, sq, nullptr);
    co = Interval::from_endpoints(cmid - padq, cmid + padq);
    si = Interval::from_endpoints(smid - padq, smid + padq);
    mpfr_clears(m, c, s, nullptr);
}

} // namespace

Interval Cyclotomic::abs2() const {
    Interval re(0l), im(0l);
    for (size_t i = 0; i < phi_; ++i) {
        if (c_[i] == 0)
            continue;
        Interval co, si;
        trig_enclosure(i, N_, co, si);
        Interval coef{Int(c_[i])};
        re = re + coef * co;
        im = im + coef * si;
    }
    return re * re + im * im;
}

Int ResidueFunction::total() const {
    Int t = 0;
    for (int32_t x : v_)
        t += x;
    return t;
}

Cyclotomic char_eval(const CharacterTriple& chi, uint64_t fa, uint64_t fb, uint64_t fc,
                     uint64_t p, unsigned k) {
    uint64_t N = chi.N;
    using u128 = unsigned __int128;
    uint64_t e = static_cast<uint64_t>(
        (u128(chi.a) * fa + u128(chi.b) * fb + u128(chi.c) * fc) % N);
    return Cyclotomic::root(p, k, e);
}

Cyclotomic fourier_at(const ResidueFunction& phi, const CharacterTriple& chi, uint64_t p,
                      unsigned k) {
    uint64_t N = phi.modulus();
    if (N != chi.N)
        throw std::invalid_argument("fourier_at: modulus mismatch");
    double n3 = double(N) * N * N;
    if (n3 > 1e8)
        throw BudgetExceededError("fourier_at: N^3 too large");
    Cyclotomic acc(p, k);
    using u128 = unsigned __int128;
    for (uint64_t c = 0; c < N; ++c)
        for (uint64_t b = 0; b < N; ++b) {
            uint64_t base = static_cast<uint64_t>((u128(chi.b) * b + u128(chi.c) * c) % N);
            for (uint64_t a = 0; a < N; ++a) {
                int32_t v = phi.at(a, b, c);
                if (v == 0)
                    continue;
                uint64_t e = (base + static_cast<uint64_t>((u128(chi.a) * a) % N)) % N;
                acc.add_root(e, Int(v));
            }
        }
    return acc;
}

uint64_t charsum_modulus(const KodairaSymbol& T, uint64_t p, unsigned* k_out) {
    unsigned k;
    switch (T.tag) {
    case KodairaTag::III:
    case KodairaTag::IV:
        k = 2;
        break;
    case KodairaTag::In:
        if (T.n < 2)
            throw std::invalid_argument("charsum_modulus: need n >= 2");
        k = T.n;
        break;
    default:
        throw std::invalid_argument("charsum_modulus: T must be III, IV or I_{n>=2}");
    }
    if (k_out)
        *k_out = k;
    return pow_u64(p, k);
}

uint64_t translate_modulus(const KodairaSymbol& T, uint64_t p) {
    switch (T.tag) {
    case KodairaTag::III:
    case KodairaTag::IV:
        return p;
    case KodairaTag::In:
        return pow_u64(p, T.n / 2 + T.n % 2); // p^n/2 even, p^{n+1 over 2} odd
    default:
        throw std::invalid_argument("translate_modulus: bad T");
    }
}

unsigned exponent_kT(const KodairaSymbol& T) {
    switch (T.tag) {
    case KodairaTag::III:
        return 2;
    case KodairaTag::IV:
        return 1;
    case KodairaTag::In:
        return T.n % 2 == 0 ? 3 * (T.n / 2) : 3 * (T.n / 2) + 1;
    default:
        throw std::invalid_argument("exponent_kT: bad T");
    }
}

ResidueFunction phi0_indicator(const KodairaSymbol& T, uint64_t p) {
    unsigned k;
    uint64_t N = charsum_modulus(T, p, &k);
    ResidueFunction phi(N);
    auto val_ge = [&](uint64_t x, unsigned e) {
        uint64_t q = pow_u64(p, e);
        return x % q == 0;
    };
    for (uint64_t a = 0; a < N; ++a)
        for (uint64_t b = 0; b < N; ++b)
            for (uint64_t c = 0; c < N; ++c) {
                bool in = false;
                switch (T.tag) {
                case KodairaTag::III:
                    in = a % p == 0 && b % p == 0 && val_ge(c, 2);
                    break;
                case KodairaTag::IV:
                    in = a % p == 0 && val_ge(b, 2) && val_ge(c, 2);
                    break;
                case KodairaTag::In:
                    if (T.n % 2 == 0)
                        in = val_ge(b, T.n / 2) && val_ge(c, T.n);
                    else
                        in = val_ge(b, T.n / 2 + 1) && val_ge(c, T.n);
                    break;
                default:
                    break;
                }
                if (in)
                    phi.at(a, b, c) = 1;
            }
    return phi;
}

ResidueFunction phi_T(const KodairaSymbol& T, uint64_t p) {
    ResidueFunction base = phi0_indicator(T, p);
    uint64_t N = base.modulus();
    uint64_t M = translate_modulus(T, p);
    ResidueFunction out(N);
    // (r . phi)(f) = phi((-r) . f); so out(f) counts r with f(x - r) in S0.
    using u128 = unsigned __int128;
    for (uint64_t a = 0; a < N; ++a)
        for (uint64_t b = 0; b < N; ++b)
            for (uint64_t c = 0; c < N; ++c) {
                if (base.at(a, b, c) == 0)
                    continue;
                // add 1 to every translate r . (a,b,c), r in [0, M)
                for (uint64_t r = 0; r < M; ++r) {
                    uint64_t a1 = (a + 3 * r) % N;
                    uint64_t b1 =
                        static_cast<uint64_t>((b + u128(2) * r % N * a + u128(3) * r % N * r) % N);
                    uint64_t c1 = static_cast<uint64_t>(
                        (c + u128(r) * b % N + u128(r) * r % N * a % N + u128(r) * r % N * r) % N);
                    out.at(a1, b1, c1) += 1;
                }
            }
    return out;
}

CharacterTriple ga_action_char(uint64_t r, const CharacterTriple& chi) {
    uint64_t N = chi.N;
    using u128 = unsigned __int128;
    CharacterTriple out;
    out.N = N;
    out.a = static_cast<uint64_t>((chi.a + u128(2) * r % N * chi.b + u128(r) * r % N * chi.c) % N);
    out.b = static_cast<uint64_t>((chi.b + u128(r) * chi.c) % N);
    out.c = chi.c;
    return out;
}

Cyclotomic psi_r(uint64_t r, const CharacterTriple& chi, uint64_t p, unsigned k) {
    uint64_t N = chi.N;
    using u128 = unsigned __int128;
    uint64_t r2 = static_cast<uint64_t>(u128(r) * r % N);
    uint64_t r3 = static_cast<uint64_t>(u128(r2) * r % N);
    uint64_t e = static_cast<uint64_t>(
        (u128(3) * chi.a % N * r + u128(3) * chi.b % N * r2 + u128(chi.c) * r3) % N);
    return Cyclotomic::root(p, k, e);
}

uint64_t delta2(const CharacterTriple& chi) {
    using u128 = unsigned __int128;
    uint64_t N = chi.N;
    uint64_t b2 = static_cast<uint64_t>(u128(chi.b) * chi.b % N);
    uint64_t ac = static_cast<uint64_t>(u128(chi.a) * chi.c % N);
    return (b2 + N - ac) % N;
}

Int phi0_hat_value(const KodairaSymbol& T, uint64_t p, const CharacterTriple& chi) {
    uint64_t N = charsum_modulus(T, p);
    if (chi.N != N)
        throw std::invalid_argument("phi0_hat_value: modulus mismatch");
    // S0 is a product of subgroups (cosets at 0); the sum over a subgroup
    // q Z/N is |subgroup| when N | q*chi-component, else 0.
    auto subgroup_sum = [&](unsigned e, uint64_t comp) -> uint64_t {
        // component runs over p^e Z / N Z, size N / p^e
        uint64_t q = pow_u64(p, e);
        uint64_t size = N / q;
        return (static_cast<unsigned __int128>(comp) * q % N) == 0 ? size : 0;
    };
    unsigned ea, eb, ec;
    switch (T.tag) {
    case KodairaTag::III: ea = 1; eb = 1; ec = 2; break;
    case KodairaTag::IV:  ea = 1; eb = 2; ec = 2; break;
    case KodairaTag::In:
        ea = 0;
        eb = T.n / 2 + T.n % 2;
        ec = T.n;
        break;
    default:
        throw std::invalid_argument("phi0_hat_value: bad T");
    }
    uint64_t m = subgroup_sum(ea, chi.a);
    if (m) m *= subgroup_sum(eb, chi.b);
    if (m) m *= subgroup_sum(ec, chi.c);
    return Int(m);
}

Cyclotomic phi0_hat(const KodairaSymbol& T, uint64_t p, const CharacterTriple& chi) {
    unsigned k;
    charsum_modulus(T, p, &k);
    return Cyclotomic::integer(p, k, phi0_hat_value(T, p, chi));
}

bool phi0_support(const KodairaSymbol& T, uint64_t p, const CharacterTriple& chi) {
    return phi0_hat_value(T, p, chi) != 0;
}

uint64_t r_T_count(const KodairaSymbol& T, uint64_t p, const CharacterTriple& chi) {
    uint64_t M = translate_modulus(T, p);
    uint64_t cnt = 0;
    for (uint64_t r = 0; r < M; ++r)
        if (phi0_support(T, p, ga_action_char(r, chi)))
            ++cnt;
    return cnt;
}

Cyclotomic phi_T_hat(const KodairaSymbol& T, uint64_t p, const CharacterTriple& chi) {
    unsigned k;
    uint64_t N = charsum_modulus(T, p, &k);
    uint64_t M = translate_modulus(T, p);
    Cyclotomic acc(p, k);
    using u128 = unsigned __int128;
    for (uint64_t r = 0; r < M; ++r) {
        Int m = phi0_hat_value(T, p, ga_action_char(r, chi));
        if (m == 0)
            continue;
        // the twist factor is a monomial: add m * zeta^{3ar + 3br^2 + cr^3}
        uint64_t r2 = static_cast<uint64_t>(u128(r) * r % N);
        uint64_t r3 = static_cast<uint64_t>(u128(r2) * r % N);
        uint64_t e = static_cast<uint64_t>(
            (u128(3) * chi.a % N * r + u128(3) * chi.b % N * r2 + u128(chi.c) * r3) % N);
        acc.add_root(e, m);
    }
    return acc;
}

Int SplittingType::Q() const {
    Int q = 1;
    for (const auto& [p, T] : pairs) {
        unsigned e = (T.tag == KodairaTag::In) ? T.n / 2 : 1;
        q *= pow_int(Int(static_cast<unsigned long>(p)), e);
    }
    return q;
}

Int SplittingType::m_III() const {
    Int m = 1;
    for (const auto& [p, T] : pairs)
        if (T.tag == KodairaTag::III)
            m *= static_cast<unsigned long>(p);
    return m;
}

Int SplittingType::m_IV() const {
    Int m = 1;
    for (const auto& [p, T] : pairs)
        if (T.tag == KodairaTag::IV)
            m *= static_cast<unsigned long>(p);
    return m;
}

Int SplittingType::m_even() const {
    Int m = 1;
    for (const auto& [p, T] : pairs)
        if (T.tag == KodairaTag::In && T.n % 2 == 0)
            m *= static_cast<unsigned long>(p);
    return m;
}

Int SplittingType::m_odd() const {
    Int m = 1;
    for (const auto& [p, T] : pairs)
        if (T.tag == KodairaTag::In && T.n % 2 == 1)
            m *= static_cast<unsigned long>(p);
    return m;
}

Rat SplittingType::nu() const {
    Rat v(1);
    for (const auto& [p, T] : pairs)
        v *= symbol_density(T, Int(static_cast<unsigned long>(p)));
    return v;
}

namespace {

Int count_in_range(const Int& lo, const Int& hi, const Int& r, const Int& M) {
    // # { x in [lo, hi] : x = r (mod M) }
    Int a, b;
    mpz_fdiv_q(a.get_mpz_t(), Int(hi - r).get_mpz_t(), M.get_mpz_t());
    mpz_fdiv_q(b.get_mpz_t(), Int(lo - 1 - r).get_mpz_t(), M.get_mpz_t());
    return a - b;
}

Int iroot(const Int& y, unsigned long n) {
    Int r;
    mpz_root(r.get_mpz_t(), y.get_mpz_t(), n);
    return r;
}

} // namespace

Int count_splitting_type(const SplittingType& sigma, const Int& Y) {
    if (Y > Int("1000000000000"))
        throw BudgetExceededError("count_splitting_type: Y above budget");
    Int Abound = iroot(Y, 6), Bbound = iroot(Y, 3), Cbound = iroot(Y, 2);
    if (sigma.pairs.empty())
        return (2 * Abound + 1) * (2 * Bbound + 1) * (2 * Cbound + 1);
    // leaves of the (A, B) plane per prime
    struct PrimeData {
        Int p;
        std::vector<PlaneLeaf> leaves;
    };
    std::vector<PrimeData> pd;
    for (const auto& [p, T] : sigma.pairs) {
        SymbolTarget tgt{T};
        pd.push_back({Int(static_cast<unsigned long>(p)),
                      enumerate_plane(p, suggested_modulus_exp(T), tgt)});
    }
    Int total = 0;
    for (Int a = -Abound; a <= Abound; ++a) {
        // per prime: one (b, c) class mod p^k per leaf
        // combine across primes by CRT over all leaf tuples
        std::vector<size_t> idx(pd.size(), 0);
        for (;;) {
            Int M(1), bres(0), cres(0);
            for (size_t i = 0; i < pd.size(); ++i) {
                const auto& leaf = pd[i].leaves[idx[i]];
                Int pk = pow_int(pd[i].p, leaf.k);
                Int inv3, inv27;
                mpz_invert(inv3.get_mpz_t(), Int(3).get_mpz_t(), pk.get_mpz_t());
                mpz_invert(inv27.get_mpz_t(), Int(27).get_mpz_t(), pk.get_mpz_t());
                // b = A + a^2/3, c = B + a b / 3 - 2 a^3 / 27 (mod p^k)
                Int b0 = (Int(static_cast<unsigned long>(leaf.A)) + a * a * inv3) % pk;
                if (b0 < 0)
                    b0 += pk;
                Int c0 = (Int(static_cast<unsigned long>(leaf.B)) + a * b0 * inv3 -
                          2 * a * a * a * inv27) % pk;
                if (c0 < 0)
                    c0 += pk;
                // CRT with accumulated (bres mod M)
                Int g, u, v;
                mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), M.get_mpz_t(),
                           pk.get_mpz_t());
                // moduli coprime (distinct primes)
                Int newM = M * pk;
                Int nb = (bres * v % newM * pk + b0 * u % newM * M) % newM;
                Int nc = (cres * v % newM * pk + c0 * u % newM * M) % newM;
                if (nb < 0)
                    nb += newM;
                if (nc < 0)
                    nc += newM;
                M = newM;
                bres = nb;
                cres = nc;
            }
            total += count_in_range(-Bbound, Bbound, bres, M) *
                     count_in_range(-Cbound, Cbound, cres, M);
            // advance the tuple
            size_t i = 0;
            while (i < pd.size() && ++idx[i] == pd[i].leaves.size()) {
                idx[i] = 0;
                ++i;
            }
            if (i == pd.size())
                break;
        }
    }
    return total;
}

} // namespace ecred
