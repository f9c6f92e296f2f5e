#ifndef CYLINT_PARAMS_HPP
#define CYLINT_PARAMS_HPP

#include <iosfwd>
#include <map>
#include <string>

#include "cylint/catalog.hpp"

namespace cylint {

// Flat key-value parameter file:
//   <name> = <number>           constants
//   <slot> = <kind>             function slots (zero|const|poly|power|trig|exp2
//                               or family-specific profile kinds)
//   <slot>.<arg> = <number>     slot arguments
// '#' starts a comment. Unknown keys are rejected at construction time.
class ParamFile {
  public:
    static ParamFile parse(std::istream& in);
    static ParamFile load(const std::string& path);  // ValidationError if unreadable

    bool has(const std::string& key) const;
    double number(const std::string& key) const;               // ValidationError
    double number_or(const std::string& key, double fallback) const;
    std::string kind(const std::string& key) const;            // ValidationError
    std::string kind_or(const std::string& key, const std::string& fallback) const;

    // Function slot from the closed grammar; marks keys consumed.
    // periodic => trig frequency must be an integer.
    Function1D slot(const std::string& name, bool periodic = false) const;

    // Every key must have been consumed by number()/kind()/slot() calls.
    void reject_unknown() const;

  private:
    std::map<std::string, std::string> kinds_;
    std::map<std::string, double> numbers_;
    mutable std::map<std::string, bool> consumed_;
};

// Builds a catalog instance for "F1".."F8" from a parsed parameter file.
SystemInstance build_from_params(const std::string& family_id, const ParamFile& pf);

// Initial phase from a file with keys r, phi, Z, p_r, p_phi, p_Z.
CylPhase initial_phase_from_file(const std::string& path);

// Human-readable schema for `describe`.
std::string family_schema_text(const std::string& family_id);

}  // namespace cylint

#endif
