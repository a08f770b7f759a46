#pragma once

#include <iosfwd>

#include "cpabe/docstore.h"

namespace cpabe::bench {

struct BenchConfig {
    unsigned runs = 15;
    unsigned warmup_runs = 3;
    unsigned doc_count = 100;
    std::vector<unsigned> attr_range = {5, 10, 15, 20, 25, 30};
    std::vector<unsigned> size_range_kb = {100, 200, 300, 400, 500, 600, 700, 800, 900, 1000};
    std::uint64_t seed = 42;
    std::string output_path;     // CSV destination; empty writes to stdout
    std::string authority_dir;   // optional; empty runs against an ephemeral authority

    void validate() const;  // UsageError on nonsense ranges
};

struct BenchRow {
    std::string experiment;
    std::string parameter;
    std::string metric;  // "mean_ms", "size_bytes" or "reference_ms"
    double value = 0;
    double std_dev = 0;
    unsigned runs = 0;
    std::vector<double> raw;  // per-run measurements in ms, empty for sizes
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::string environment;

    void write_csv(std::ostream& out) const;
    void write_csv_file(const std::string& path) const;
};

// Seed-deterministic dataset with the experiment's three fields
// (name, salary, credit_card_number); contains between 1 and doc_count/4
// documents named "Alice" so the equality query always has matches.
std::vector<Document> gen_dataset(std::uint64_t seed, unsigned doc_count);

// Q1 (retrieve all) and Q2 (name equality) against three store variants:
// plaintext, single-key AES (DET name, RND rest) and the CP-ABE hybrid store.
BenchReport bench_queries(const BenchConfig& cfg);

// Total ciphertext bytes vs. attribute count (at the largest payload) and
// vs. payload size (at the smallest and largest attribute counts).
BenchReport bench_size_scaling(const BenchConfig& cfg);

enum class Phase { kEncrypt, kDecrypt };

// Hybrid encryption / decryption wall time over the (attribute count x
// payload size) grid. Decryption keys hold exactly the policy's attributes.
BenchReport bench_time_scaling(const BenchConfig& cfg, Phase phase);

std::string capture_environment();

}  // namespace cpabe::bench
