#pragma once

#include <stdexcept>
#include <string>

namespace cidsrank {

// Error taxonomy. The CLI maps these onto process exit codes:
// UsageError -> 1, DataError (and anything else) -> 2, FetchError -> 3.

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad command line, bad flag combination.
class UsageError : public Error {
public:
    using Error::Error;
};

// Anything wrong with input data or derived quantities.
class DataError : public Error {
public:
    using Error::Error;
};

// Structurally malformed input (bad JSON, unparseable document).
class ParseError : public DataError {
public:
    using DataError::DataError;
};

// Well-formed input that violates a data invariant.
class IntegrityError : public DataError {
public:
    using DataError::DataError;
};

// Author name with no letters cannot produce a match key.
class EmptyKeyError : public DataError {
public:
    using DataError::DataError;
};

// A search page with neither author entries nor the empty-results marker.
class EmptyResultError : public DataError {
public:
    using DataError::DataError;
};

// Team member not present in the corpus.
class MissingProfileError : public DataError {
public:
    using DataError::DataError;
};

// citing_pub_ids entry that resolves to no publication in the corpus.
class DanglingEdgeError : public DataError {
public:
    using DataError::DataError;
};

// Two ranking-table rows with the same label.
class DuplicateLabelError : public DataError {
public:
    using DataError::DataError;
};

// Percentage with a zero denominator.
class UndefinedPercentError : public DataError {
public:
    using DataError::DataError;
};

// Row label that names no row.
class UnknownLabelError : public DataError {
public:
    using DataError::DataError;
};

// Transport or cache failure while fetching.
class FetchError : public Error {
public:
    using Error::Error;
};

// Key absent from the cache in offline mode.
class CacheMissError : public FetchError {
public:
    using FetchError::FetchError;
};

// One transport attempt failed; retried up to FetchPolicy::max_retries.
class TransportError : public FetchError {
public:
    using FetchError::FetchError;
};

}  // namespace cidsrank
