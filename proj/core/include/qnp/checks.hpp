#pragma once

#include <string>

#include "qnp/h1.hpp"
#include "qnp/serialize.hpp"

namespace qnp {

enum class Verdict { Pass, Fail, Skipped };
const char* to_string(Verdict v);

// Structured verdict for one named check on one grid cell.  Failures always
// carry a replayable counterexample in `witnesses`; skips carry the violated
// precondition in `reason`.
struct CheckReport {
    std::string check;
    json params = json::object();
    Verdict verdict = Verdict::Pass;
    std::string reason;
    json witnesses = json::array();
    json flags = json::object();
    int64_t tested = 0;
    int64_t elapsed_ms = 0;

    json to_json() const;
};

// Precomputed immutable data for one (K, Q, L/K) cell.
struct CheckContext {
    FieldPtr K;
    QuadForm Q;
    SquareClass e;
    NormContextPtr nc;
    QuadForm QL;
    Subgroup SnK, SnL, GK, GL;

    static std::shared_ptr<const CheckContext> make(const QuadForm& Q, const SquareClass& e);
};
using CheckContextPtr = std::shared_ptr<const CheckContext>;

enum class SqRegime { TrivialKernel, Partial };

// extension-cell checks
CheckReport check_scharlau(const CheckContext& c);
CheckReport check_knebusch(const CheckContext& c);
CheckReport check_h_stability(const CheckContext& c);
CheckReport check_sq_commutes(const CheckContext& c, SqRegime regime);
CheckReport check_lemma53(const CheckContext& c);
CheckReport check_lemma55(const CheckContext& c);
CheckReport check_lemma56(const CheckContext& c);

// form-cell checks
CheckReport check_keri(const QuadForm& Q);
CheckReport check_sn_odd_degree(const QuadForm& Q);

// field-cell check: R-triviality certificate for xi = tau (1, t)
CheckReport check_lemma42(const FieldPtr& K, const QuadForm& tau);

std::vector<std::string> check_ids();
bool is_ext_check(const std::string& id);

}  // namespace qnp
