#include "pdisco/candidates.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "pdisco/errors.hpp"

namespace pdisco {

namespace {

std::string factor_name(const Candidate::Factor& f) {
    std::string s = "u";
    for (int k = 0; k < f.derivative_order; ++k) s += (k == 0) ? "_x" : "x";
    if (f.power > 1) s += "^" + std::to_string(f.power);
    return s;
}

}  // namespace

std::string Candidate::name() const {
    std::string s;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) s += "*";
        s += factor_name(factors[i]);
    }
    return s;
}

int Candidate::max_derivative_order() const {
    int m = 0;
    for (const auto& f : factors) m = std::max(m, f.derivative_order);
    return m;
}

int Candidate::total_power() const {
    int p = 0;
    for (const auto& f : factors) p += f.power;
    return p;
}

double Candidate::evaluate(const DerivativeJet& jet) const {
    double v = 1.0;
    for (const auto& f : factors) {
        const double base = jet.spatial(f.derivative_order);
        double pw = base;
        for (int k = 1; k < f.power; ++k) pw *= base;
        v *= pw;
    }
    return v;
}

CandidateSet::CandidateSet(std::vector<Candidate> candidates) : candidates_(std::move(candidates)) {
    std::set<std::string> seen;
    for (const auto& c : candidates_) {
        if (c.factors.empty()) throw config_error("candidate with no factors");
        if (c.max_derivative_order() > 4)
            throw config_error("candidate spatial order above 4: " + c.name());
        if (!seen.insert(c.name()).second)
            throw config_error("duplicate candidate: " + c.name());
    }
}

CandidateSet CandidateSet::default_set() {
    std::vector<Candidate> c;
    for (int k = 0; k <= 4; ++k) c.push_back({{{k, 1}}});                    // u .. u_xxxx
    for (int k = 1; k <= 4; ++k) c.push_back({{{0, 1}, {k, 1}}});            // u*u_x .. u*u_xxxx
    c.push_back({{{0, 2}}});                                                 // u^2
    c.push_back({{{1, 2}}});                                                 // u_x^2
    return CandidateSet(std::move(c));
}

Candidate CandidateSet::parse(const std::string& name) {
    Candidate cand;
    std::size_t pos = 0;
    while (pos < name.size()) {
        if (name[pos] != 'u') throw config_error("cannot parse candidate '" + name + "'");
        ++pos;
        Candidate::Factor f;
        if (pos < name.size() && name[pos] == '_') {
            ++pos;
            while (pos < name.size() && name[pos] == 'x') {
                ++f.derivative_order;
                ++pos;
            }
            if (f.derivative_order == 0)
                throw config_error("cannot parse candidate '" + name + "'");
        }
        if (pos < name.size() && name[pos] == '^') {
            ++pos;
            std::size_t used = 0;
            f.power = std::stoi(name.substr(pos), &used);
            pos += used;
            if (f.power < 1) throw config_error("candidate power must be >= 1 in '" + name + "'");
        }
        cand.factors.push_back(f);
        if (pos < name.size()) {
            if (name[pos] != '*') throw config_error("cannot parse candidate '" + name + "'");
            ++pos;
        }
    }
    if (cand.factors.empty()) throw config_error("empty candidate name");
    return cand;
}

CandidateSet CandidateSet::from_names(const std::vector<std::string>& names) {
    std::vector<Candidate> c;
    c.reserve(names.size());
    for (const auto& n : names) c.push_back(parse(n));
    return CandidateSet(std::move(c));
}

std::vector<std::string> CandidateSet::names() const {
    std::vector<std::string> out;
    out.reserve(candidates_.size());
    for (const auto& c : candidates_) out.push_back(c.name());
    return out;
}

int CandidateSet::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < candidates_.size(); ++i)
        if (candidates_[i].name() == name) return static_cast<int>(i);
    return -1;
}

}  // namespace pdisco
