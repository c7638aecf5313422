#pragma once

#include <stdexcept>
#include <string>

namespace dioph {

// Error kinds surfaced by the library. The CLI maps these to exit codes.
enum class Errc {
    Syntax,            // malformed input text
    Domain,            // value outside an operation's domain
    PrecisionBudget,   // refinement cap reached before the requested width
    DegeneratePair,    // 1, xi, eta rationally dependent on a scanned point
    InsufficientData,  // too few points / change points / filtered indices
    RegimeMismatch,    // estimator hypothesis regime not met
    OutOfDomain,       // abscissa outside a function's domain
    AlphaTooLarge,     // alpha at or above the finite-horizon psi_sup
    Region,            // target outside the region a construction covers
    Spectrum,          // target violates the admissible-spectrum inequalities
    Io,                // file system failure
    Format,            // file parses but violates the schema or invariants
    Range,             // query beyond the range covered by the data
    QTooLarge,         // parametric query above the desk-scale cap
};

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace dioph
