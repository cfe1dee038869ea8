#pragma once

// JSON import/export for codes and the certification report.

#include <string>

#include "relay/fastdec.hpp"
#include "relay/stcodes.hpp"

namespace relay::io {

/// {name, n_t, T, k, generators: row-major [re, im] pairs, partition}.
std::string code_to_json(const st::CodeDefinition& code);

/// Inverse of code_to_json; also the entry point for analyzing external
/// codes. exact_generators stays empty for imported codes. Throws
/// std::invalid_argument with a diagnostic on schema violations.
st::CodeDefinition code_from_json(const std::string& text);

struct CertificationReport {
    std::string code;
    std::vector<int> ordering;
    fd::BoolMask mask;
    st::GroupPartition partition;
    int exponent = 0;
    int stability_trials = 0;
    bool pass = false;
};

/// {code, ordering, mask (bit rows), partition, exponent, stability_trials, pass}.
std::string certification_to_json(const CertificationReport& report);

}  // namespace relay::io
