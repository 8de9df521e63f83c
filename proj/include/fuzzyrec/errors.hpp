#pragma once

#include <stdexcept>
#include <string>

namespace fuzzyrec {

// Malformed input files (TSV, model files, synth specs, pattern notation).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally valid input that cannot be processed (empty training data,
// empty reconstructions, unwritable output, ...).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fuzzyrec
