#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "harmsum/primes.hpp"

namespace harmsum {

// Length-prefixed text records: "<byte count>\n<bytes>\n".  Self-delimiting,
// diffable, and safe for payloads that themselves contain newlines.
void write_record(std::ostream& out, const std::string& payload);
std::optional<std::string> read_record(std::istream& in);

// A checkpoint file is a fingerprint record (command + config echo) followed
// by payload records.  Loading with a different fingerprint returns nullopt
// so a stale file can never silently steer a new run.
void save_checkpoint(const std::string& path, const std::string& fingerprint,
                     const std::vector<std::string>& payload);
std::optional<std::vector<std::string>> load_checkpoint(const std::string& path,
                                                        const std::string& fingerprint);

// RFC-4180-ish CSV: quote when a field holds a comma, quote, or newline.
std::string csv_field(const std::string& raw);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

// Run-length encoding of a numerator choice list: "value x count" pairs.
std::string rle_encode(const std::vector<long>& values);
std::vector<long> rle_decode(const std::string& text);

// Sorted indices, one per line (sparse support export).
void write_index_list(std::ostream& out, const std::vector<mpz_class>& indices);

// Collects results produced out of order by a worker pool and releases them
// in index order, so output bytes do not depend on the thread count.
class OrderedSink {
public:
    explicit OrderedSink(std::ostream& out) : out_(out) {}
    void submit(u64 index, std::string text);
    bool drained() const { return pending_.empty(); }

private:
    std::ostream& out_;
    u64 next_ = 0;
    std::map<u64, std::string> pending_;
};

}  // namespace harmsum
