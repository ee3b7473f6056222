#ifndef PDISCO_CANDIDATES_HPP
#define PDISCO_CANDIDATES_HPP

#include <string>
#include <vector>

#include "pdisco/surrogate.hpp"

namespace pdisco {

// One dictionary term: a product of powers of spatial derivatives,
// u^(order) meaning the order-th spatial derivative (order 0 = u itself).
// Example: u * u_xx is {{0, 1}, {2, 1}}; u_x^2 is {{1, 2}}.
struct Candidate {
    struct Factor {
        int derivative_order = 0;  // 0..4
        int power = 1;
    };
    std::vector<Factor> factors;

    std::string name() const;
    int max_derivative_order() const;
    int total_power() const;
    bool is_linear() const { return factors.size() == 1 && factors[0].power == 1; }

    double evaluate(const DerivativeJet& jet) const;
};

// Ordered candidate dictionary.
class CandidateSet {
public:
    CandidateSet() = default;
    explicit CandidateSet(std::vector<Candidate> candidates);

    // The 11-term dictionary used throughout:
    // u, u_x, u_xx, u_xxx, u_xxxx, u*u_x, u*u_xx, u*u_xxx, u*u_xxxx, u^2, u_x^2
    static CandidateSet default_set();

    // Parses names like "u", "u_xx", "u*u_x", "u^2", "u_x^2".
    static Candidate parse(const std::string& name);
    static CandidateSet from_names(const std::vector<std::string>& names);

    std::size_t size() const { return candidates_.size(); }
    const Candidate& operator[](std::size_t i) const { return candidates_[i]; }
    const std::vector<Candidate>& all() const { return candidates_; }
    std::vector<std::string> names() const;
    int index_of(const std::string& name) const;  // -1 when absent

private:
    std::vector<Candidate> candidates_;
};

}  // namespace pdisco

#endif
