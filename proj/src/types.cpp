#include "twcv/types.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace twcv {

std::size_t Dataset::covariate_index(const std::string& name) const {
    for (std::size_t j = 0; j < covariate_names.size(); ++j) {
        if (covariate_names[j] == name) return j;
    }
    throw std::invalid_argument("unknown covariate: " + name);
}

void Dataset::validate() const {
    const std::size_t rows = locations.size();
    if (rows < 2) throw std::invalid_argument("dataset needs at least 2 observations");
    if (covariates.size() != rows || response.size() != rows) {
        throw std::invalid_argument("dataset row counts differ");
    }
    std::unordered_set<std::string> seen;
    for (const auto& name : covariate_names) {
        if (!seen.insert(name).second) {
            throw std::invalid_argument("duplicate covariate name: " + name);
        }
    }
    const std::size_t cols = covariate_names.size();
    for (std::size_t i = 0; i < rows; ++i) {
        if (!std::isfinite(locations[i].x) || !std::isfinite(locations[i].y)) {
            throw std::invalid_argument("non-finite coordinate at row " + std::to_string(i));
        }
        if (!std::isfinite(response[i])) {
            throw std::invalid_argument("non-finite response at row " + std::to_string(i));
        }
        if (covariates[i].size() != cols) {
            throw std::invalid_argument("covariate row width mismatch at row " + std::to_string(i));
        }
        for (double v : covariates[i]) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("non-finite covariate at row " + std::to_string(i));
            }
        }
    }
}

Dataset subset_covariates(const Dataset& data, const std::vector<std::string>& names) {
    Dataset out;
    out.locations = data.locations;
    out.response = data.response;
    out.covariate_names = names;
    std::vector<std::size_t> cols;
    cols.reserve(names.size());
    for (const auto& name : names) cols.push_back(data.covariate_index(name));
    out.covariates.reserve(data.n());
    for (const auto& row : data.covariates) {
        std::vector<double> sub;
        sub.reserve(cols.size());
        for (std::size_t c : cols) sub.push_back(row[c]);
        out.covariates.push_back(std::move(sub));
    }
    return out;
}

}  // namespace twcv
