#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace loglevy {

enum class Process { L, X, Y, Z };

std::string process_name(Process p);
Process process_from_name(const std::string& name);

// Raised on parameter-domain violations (alpha outside (0,1), nonpositive
// beta/b/t, ...). The CLI maps it to its own exit code.
class domain_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Validated parameter bundle: alpha in (0,1) with A = -log(1-alpha) cached,
// plus the optional subordinator parameters beta (Gamma scale) and b
// (Poisson rate), strictly positive when present.
class ProcessParams {
public:
    explicit ProcessParams(double alpha,
                           std::optional<double> beta = std::nullopt,
                           std::optional<double> b = std::nullopt);

    double alpha() const { return alpha_; }
    double A() const { return A_; }

    bool has_beta() const { return beta_.has_value(); }
    bool has_b() const { return b_.has_value(); }
    double beta() const;
    double b() const;

    ProcessParams with_beta(double beta) const;
    ProcessParams with_b(double b) const;

    // Throws domain_error unless the parameters required by `p` are present.
    void require(Process p) const;

private:
    double alpha_;
    double A_;
    std::optional<double> beta_;
    std::optional<double> b_;
};

}  // namespace loglevy
