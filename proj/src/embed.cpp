#include "namebias/embed.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <thread>
#include <unordered_map>

#include <unistd.h>

#include <openssl/evp.h>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "namebias/common.hpp"
#include "namebias/text.hpp"

namespace namebias {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(BackendKind k) {
    switch (k) {
        case BackendKind::RemoteHttp: return "remote";
        case BackendKind::HashDeterministic: return "hash";
        case BackendKind::BagOfWords: return "bow";
    }
    return "unknown";
}

BackendKind parse_backend_kind(std::string_view name) {
    if (name == "remote") return BackendKind::RemoteHttp;
    if (name == "hash") return BackendKind::HashDeterministic;
    if (name == "bow") return BackendKind::BagOfWords;
    throw config_error("unknown backend kind: " + std::string(name) +
                       " (expected remote, hash or bow)");
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int md_len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &md_len, EVP_sha256(), nullptr) != 1) {
        throw task_error("sha256 digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out(md_len * 2, '0');
    for (unsigned int i = 0; i < md_len; ++i) {
        out[2 * i] = hex[md[i] >> 4];
        out[2 * i + 1] = hex[md[i] & 0xf];
    }
    return out;
}

namespace {

std::array<unsigned char, 32> sha256_raw(const std::string& bytes) {
    std::array<unsigned char, 32> md{};
    unsigned int md_len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &md_len, EVP_sha256(), nullptr) != 1 ||
        md_len != 32) {
        throw task_error("sha256 digest failed");
    }
    return md;
}

void put_u32_le(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_u64_le(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

}  // namespace

Embedding hash_embed(const std::string& str, int dim) {
    if (dim < 1) throw config_error("hash backend needs dim >= 1");
    Embedding e;
    e.values.reserve(static_cast<std::size_t>(dim));
    std::uint32_t counter = 0;
    while (e.values.size() < static_cast<std::size_t>(dim)) {
        std::string block_input = str;
        put_u32_le(block_input, counter++);
        const auto md = sha256_raw(block_input);
        for (int lane = 0; lane < 4 && e.values.size() < static_cast<std::size_t>(dim); ++lane) {
            const std::uint64_t u = get_u64_le(md.data() + 8 * lane);
            // Map to [-1, 1).
            e.values.push_back(static_cast<double>(u) / 9223372036854775808.0 - 1.0);
        }
    }
    double norm = 0.0;
    for (double v : e.values) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) {
        e.values[0] = 1.0;  // unreachable in practice
    } else {
        for (double& v : e.values) v /= norm;
    }
    return e;
}

Embedding bow_embed(const std::string& str, const std::vector<std::string>& vocabulary) {
    if (vocabulary.empty()) throw config_error("bag-of-words backend needs a vocabulary");
    Embedding e;
    e.values.reserve(vocabulary.size());
    for (const auto& term : vocabulary) {
        e.values.push_back(
            static_cast<double>(text::count_occurrences(str, term, /*fold_case=*/true)));
    }
    return e;
}

std::vector<std::string> load_vocabulary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open vocabulary: " + path);
    std::vector<std::string> vocab;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string entry = text::trim(line);
        if (entry.empty() || entry[0] == '#') continue;
        vocab.push_back(std::move(entry));
    }
    if (vocab.empty()) throw config_error("vocabulary has no entries: " + path);
    return vocab;
}

namespace {

std::string cache_key(const BackendSpec& spec, const std::string& str) {
    std::string material{to_string(spec.kind)};
    material.push_back('\x1f');
    material += spec.model_id;
    material.push_back('\x1f');
    if (spec.kind == BackendKind::BagOfWords) {
        std::string joined;
        for (const auto& term : spec.vocabulary) {
            joined += term;
            joined.push_back('\n');
        }
        material += sha256_hex(joined);
        material.push_back('\x1f');
    }
    material += str;
    return sha256_hex(material);
}

fs::path cache_path(const std::string& cache_dir, const std::string& key) {
    return fs::path(cache_dir) / key.substr(0, 2) / (key + ".vec");
}

std::optional<Embedding> cache_read(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    unsigned char hdr[4];
    if (!in.read(reinterpret_cast<char*>(hdr), 4)) return std::nullopt;
    std::uint32_t dim = 0;
    for (int i = 3; i >= 0; --i) dim = (dim << 8) | hdr[i];
    Embedding e;
    e.values.resize(dim);
    for (std::uint32_t i = 0; i < dim; ++i) {
        unsigned char raw[8];
        if (!in.read(reinterpret_cast<char*>(raw), 8)) return std::nullopt;
        e.values[i] = std::bit_cast<double>(get_u64_le(raw));
    }
    return e;
}

// Write-once: writes to a unique temp file, then renames into place. A
// losing concurrent writer leaves the winner's identical content untouched.
void cache_write(const fs::path& path, const Embedding& e) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (fs::exists(path)) return;
    static std::atomic<std::uint64_t> ctr{0};
    const fs::path tmp = path.string() + ".tmp" + std::to_string(ctr.fetch_add(1)) + "." +
                         std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return;  // cache is best-effort
        std::string buf;
        put_u32_le(buf, static_cast<std::uint32_t>(e.values.size()));
        for (double v : e.values) {
            const std::uint64_t u = std::bit_cast<std::uint64_t>(v);
            for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((u >> (8 * i)) & 0xff));
        }
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }
    fs::rename(tmp, path, ec);
    if (ec) fs::remove(tmp, ec);
}

struct UrlParts {
    std::string base;  // scheme://host[:port]
    std::string path;
};

UrlParts split_endpoint(const std::string& endpoint) {
    const auto scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos) {
        throw config_error("endpoint must include a scheme: " + endpoint);
    }
    const auto path_begin = endpoint.find('/', scheme_end + 3);
    if (path_begin == std::string::npos) return {endpoint, "/"};
    return {endpoint.substr(0, path_begin), endpoint.substr(path_begin)};
}

std::vector<Embedding> remote_fetch(const BackendSpec& spec,
                                    const std::vector<std::string>& texts,
                                    std::size_t first_index) {
    const UrlParts url = split_endpoint(spec.endpoint);
    json body;
    body["model"] = spec.model_id;
    body["input"] = texts;
    const std::string payload = body.dump();

    httplib::Client client(url.base);
    client.set_connection_timeout(10);
    client.set_read_timeout(60);
    httplib::Headers headers;
    if (const char* key = std::getenv("EMBED_API_KEY"); key != nullptr && *key != '\0') {
        headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    std::string last_error;
    for (int attempt = 0; attempt <= spec.retries; ++attempt) {
        if (attempt > 0) {
            const auto delay = std::chrono::milliseconds(spec.backoff_ms << (attempt - 1));
            std::this_thread::sleep_for(delay);
        }
        auto res = client.Post(url.path, headers, payload, "application/json");
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status < 200 || res->status >= 300) {
            last_error = "HTTP " + std::to_string(res->status);
            continue;
        }
        json reply = json::parse(res->body, nullptr, false);
        if (reply.is_discarded() || !reply.contains("embeddings") ||
            !reply["embeddings"].is_array()) {
            last_error = "malformed response body";
            continue;
        }
        const auto& rows = reply["embeddings"];
        if (rows.size() != texts.size()) {
            last_error = "response count " + std::to_string(rows.size()) + " != request count " +
                         std::to_string(texts.size());
            continue;
        }
        std::vector<Embedding> out(texts.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out[i].values = rows[i].get<std::vector<double>>();
        }
        return out;
    }
    throw task_error("embedding request failed after " + std::to_string(spec.retries) +
                     " retries (" + last_error + "); input indices " +
                     std::to_string(first_index) + ".." +
                     std::to_string(first_index + texts.size() - 1));
}

class RequestSpacer {
  public:
    explicit RequestSpacer(int min_interval_ms) : interval_(min_interval_ms) {}

    void wait_turn() {
        if (interval_.count() == 0) return;
        std::unique_lock lock(mu_);
        const auto now = std::chrono::steady_clock::now();
        const auto earliest = last_ + interval_;
        if (now < earliest) {
            lock.unlock();
            std::this_thread::sleep_until(earliest);
            lock.lock();
        }
        last_ = std::chrono::steady_clock::now();
    }

  private:
    std::mutex mu_;
    std::chrono::milliseconds interval_;
    std::chrono::steady_clock::time_point last_{};
};

}  // namespace

std::vector<Embedding> embed_batch(const BackendSpec& spec,
                                   const std::vector<std::string>& texts) {
    if (texts.empty()) throw config_error("embed_batch: empty text list");
    for (std::size_t i = 0; i < texts.size(); ++i) {
        if (texts[i].empty()) {
            throw config_error("embed_batch: empty text at index " + std::to_string(i));
        }
    }
    if (spec.kind == BackendKind::RemoteHttp && spec.endpoint.empty()) {
        throw config_error("remote backend needs an endpoint");
    }
    if (spec.kind == BackendKind::HashDeterministic && spec.dim < 1) {
        throw config_error("hash backend needs dim >= 1");
    }
    if (spec.kind == BackendKind::BagOfWords && spec.vocabulary.empty()) {
        throw config_error("bag-of-words backend needs a vocabulary");
    }

    // Deduplicate; each distinct text is resolved once.
    std::vector<const std::string*> unique;
    std::vector<std::size_t> slot_of(texts.size());
    {
        std::unordered_map<std::string_view, std::size_t> seen;
        for (std::size_t i = 0; i < texts.size(); ++i) {
            auto [it, inserted] = seen.emplace(texts[i], unique.size());
            if (inserted) unique.push_back(&texts[i]);
            slot_of[i] = it->second;
        }
    }

    std::vector<Embedding> resolved(unique.size());
    std::vector<std::size_t> misses;
    const bool caching = !spec.cache_dir.empty();
    for (std::size_t u = 0; u < unique.size(); ++u) {
        if (caching) {
            if (auto hit = cache_read(cache_path(spec.cache_dir, cache_key(spec, *unique[u])))) {
                resolved[u] = std::move(*hit);
                continue;
            }
        }
        misses.push_back(u);
    }

    if (!misses.empty()) {
        switch (spec.kind) {
            case BackendKind::HashDeterministic:
                for (std::size_t u : misses) resolved[u] = hash_embed(*unique[u], spec.dim);
                break;
            case BackendKind::BagOfWords:
                for (std::size_t u : misses) resolved[u] = bow_embed(*unique[u], spec.vocabulary);
                break;
            case BackendKind::RemoteHttp: {
                const std::size_t batch =
                    spec.batch_size > 0 ? static_cast<std::size_t>(spec.batch_size) : 32;
                struct Job {
                    std::size_t lo, hi;  // range into `misses`
                };
                std::vector<Job> jobs;
                for (std::size_t lo = 0; lo < misses.size(); lo += batch) {
                    jobs.push_back({lo, std::min(lo + batch, misses.size())});
                }
                const std::size_t workers = std::min<std::size_t>(
                    jobs.size(), spec.max_in_flight > 0 ? spec.max_in_flight : 1);
                std::atomic<std::size_t> next{0};
                std::vector<std::exception_ptr> errors(jobs.size());
                RequestSpacer spacer(spec.min_interval_ms);
                auto worker = [&] {
                    for (std::size_t j = next.fetch_add(1); j < jobs.size();
                         j = next.fetch_add(1)) {
                        try {
                            std::vector<std::string> chunk;
                            chunk.reserve(jobs[j].hi - jobs[j].lo);
                            for (std::size_t m = jobs[j].lo; m < jobs[j].hi; ++m) {
                                chunk.push_back(*unique[misses[m]]);
                            }
                            spacer.wait_turn();
                            auto vecs = remote_fetch(spec, chunk, misses[jobs[j].lo]);
                            for (std::size_t m = jobs[j].lo; m < jobs[j].hi; ++m) {
                                resolved[misses[m]] = std::move(vecs[m - jobs[j].lo]);
                            }
                        } catch (...) {
                            errors[j] = std::current_exception();
                        }
                    }
                };
                if (workers <= 1) {
                    worker();
                } else {
                    std::vector<std::thread> pool;
                    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
                    for (auto& t : pool) t.join();
                }
                for (const auto& err : errors) {
                    if (err) std::rethrow_exception(err);
                }
                break;
            }
        }
        if (caching) {
            for (std::size_t u : misses) {
                cache_write(cache_path(spec.cache_dir, cache_key(spec, *unique[u])),
                            resolved[u]);
            }
        }
    }

    const std::size_t dim = resolved.front().dim();
    for (std::size_t u = 0; u < resolved.size(); ++u) {
        if (resolved[u].dim() != dim) {
            throw task_error("dimension mismatch across batch: got " +
                             std::to_string(resolved[u].dim()) + " and " + std::to_string(dim));
        }
        for (double v : resolved[u].values) {
            if (!std::isfinite(v)) {
                throw task_error("non-finite embedding component from backend " + spec.model_id);
            }
        }
    }

    std::vector<Embedding> out(texts.size());
    for (std::size_t i = 0; i < texts.size(); ++i) out[i] = resolved[slot_of[i]];
    return out;
}

}  // namespace namebias
