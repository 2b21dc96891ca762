#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace namebias {

// A fixed-dimension real vector for one text. Values are held as 64-bit
// reals regardless of upstream precision.
struct Embedding {
    std::vector<double> values;

    std::size_t dim() const { return values.size(); }
    bool operator==(const Embedding&) const = default;
};

enum class BackendKind { RemoteHttp, HashDeterministic, BagOfWords };

std::string_view to_string(BackendKind k);
BackendKind parse_backend_kind(std::string_view name);  // "remote" | "hash" | "bow"

struct BackendSpec {
    BackendKind kind = BackendKind::HashDeterministic;
    std::string model_id = "hash";
    std::string endpoint;                  // RemoteHttp only
    int dim = 64;                          // HashDeterministic only
    std::vector<std::string> vocabulary;   // BagOfWords only
    int batch_size = 32;
    int max_in_flight = 4;
    std::string cache_dir;                 // empty disables the cache
    int retries = 3;                       // re-attempts after the first try
    int backoff_ms = 100;                  // doubled per retry
    int min_interval_ms = 0;               // optional request spacing
};

// Embeds texts in input order. The cache (when configured) is consulted
// first; misses are computed or fetched, then persisted write-once. Remote
// fetches run in sub-batches of `batch_size` with at most `max_in_flight`
// concurrent requests; output order is deterministic regardless.
std::vector<Embedding> embed_batch(const BackendSpec& spec,
                                   const std::vector<std::string>& texts);

// Unit vector derived from a cryptographic hash of the exact bytes.
Embedding hash_embed(const std::string& text, int dim);

// Component v = case-folded word-boundary occurrence count of vocabulary[v].
Embedding bow_embed(const std::string& text, const std::vector<std::string>& vocabulary);

std::string sha256_hex(const std::string& bytes);

// One vector per vocabulary line; "#" comments ignored.
std::vector<std::string> load_vocabulary(const std::string& path);

}  // namespace namebias
