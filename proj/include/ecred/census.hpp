#ifndef ECRED_CENSUS_HPP
#define ECRED_CENSUS_HPP

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ecred/classify.hpp"
#include "ecred/euler.hpp"
#include "ecred/goodred.hpp"
#include "ecred/residue_classify.hpp"

namespace ecred {

/// One classified curve of the census.
struct CurveRecord {
    Int A, B;
    Int delta_AB;
    Int delta_E;   // prime-to-6 part, signed
    Int conductor;
    Int index;
    Int q_inv;
    Int d_inv;     // signed
    Int j_num, j_den; // j = 6912 A^3 / (4A^3 + 27B^2), reduced
    std::vector<LocalData> locals;
    bool in_E = false;
    bool in_sf = false;
    bool in_kappa = false;
};

/// Restriction of reduction types at finitely many primes (a collection in
/// the large sense: unlisted primes allow everything).
using ReductionCollection = std::vector<std::pair<Int, std::set<ReductionType>>>;

struct CensusOptions {
    Int x_max = Int(1000000);       // largest conductor bound of the grid
    mpq_class kappa = mpq_class(3, 2);
    bool full_tables = false;       // all good-reduction rows vs the single class
    Int index_cap = Int(64);        // enumerate |Delta_E| < index_cap * x_max
    unsigned tail_rows = 7;         // dyadic tail table M = 1..2^(rows-1)
    unsigned threads = 1;
    ReductionCollection sigma;      // optional reduction-type collection
};

struct CensusReport {
    std::vector<Int> grid;                            // dyadic conductor bounds
    std::map<std::string, std::vector<Int>> counts;   // family -> per-X counts
    std::vector<std::pair<Int, Int>> tails;           // (M, #{|Delta| > M C, C < x_max})
    uint64_t enumerated = 0;  // pairs passing Delta != 0 and minimality
    uint64_t in_family = 0;   // records after the j-cutoff
    Int delta_cap;            // the |Delta_E| enumeration bound used
    uint64_t invariant_violations = 0;
};

/// j-invariant as an exact reduced rational. Rejects Delta = 0.
void j_invariant(const Int& A, const Int& B, Int& num, Int& den);

/// The j-cutoff |j| < log |Delta_E| with exact rational j and interval log;
/// throws on an enclosure straddle (not expected away from crafted inputs).
bool j_cutoff_pass(const Int& A, const Int& B, const Int& delta_E_abs);

/// Family membership flags from a classified record.
void family_filters(CurveRecord& rec, const mpq_class& kappa);

/// Stream the classified family over |Delta_E| < delta_cap, calling sink for
/// every record that passes the congruence class, minimality and the
/// j-cutoff. Returns the number of enumerated (pre-cutoff) pairs.
uint64_t enumerate_family_E(const Int& delta_cap, bool full_tables,
                            const std::function<void(const CurveRecord&)>& sink,
                            uint64_t* enumerated = nullptr);

/// The full census: counts per dyadic grid point per family, dyadic tail
/// table, and per-record invariant checks.
CensusReport run_census(const CensusOptions& opts);

/// Report serialization.
std::string census_report_json(const CensusReport& rep, const CensusOptions& opts);
std::string census_report_csv(const CensusReport& rep);

} // namespace ecred

#endif
