#include "sindex/embedding_cache.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <openssl/evp.h>

namespace sindex {

namespace {

constexpr char kMagic[8] = {'E', 'M', 'B', 'C', 'A', 'C', 'H', '1'};
constexpr std::uint32_t kVersion = 1;

std::string hex(const CacheKey& key) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(64);
    for (const std::uint8_t b : key) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xF]);
    }
    return out;
}

void put_u32(std::string& buf, std::uint32_t v) {
    buf.push_back(static_cast<char>(v & 0xFF));
    buf.push_back(static_cast<char>((v >> 8) & 0xFF));
    buf.push_back(static_cast<char>((v >> 16) & 0xFF));
    buf.push_back(static_cast<char>((v >> 24) & 0xFF));
}

std::uint32_t get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) |
           (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

EmbeddingCache::EmbeddingCache(std::filesystem::path path, std::string model_id)
    : path_(std::move(path)), model_id_(std::move(model_id)) {
    if (std::filesystem::exists(path_)) load();
}

CacheKey EmbeddingCache::key_for(const std::string& model_id, const std::string& input) {
    std::string material;
    material.reserve(model_id.size() + 1 + input.size());
    material += model_id;
    material.push_back('\0');
    material += input;
    CacheKey key{};
    unsigned int len = 0;
    if (EVP_Digest(material.data(), material.size(), key.data(), &len, EVP_sha256(),
                   nullptr) != 1 ||
        len != key.size()) {
        throw std::runtime_error("embedding cache: SHA-256 digest failed");
    }
    return key;
}

bool EmbeddingCache::contains(const std::string& input) const {
    return index_.contains(hex(key_for(model_id_, input)));
}

std::optional<std::vector<double>> EmbeddingCache::lookup(const std::string& input) const {
    const auto it = index_.find(hex(key_for(model_id_, input)));
    if (it == index_.end()) return std::nullopt;
    const auto& stored = entries_[it->second].second;
    return std::vector<double>(stored.begin(), stored.end());
}

void EmbeddingCache::insert(const std::string& input, const std::vector<double>& vector) {
    if (vector.empty()) {
        throw std::invalid_argument("embedding cache: refusing to store an empty vector");
    }
    if (dim_ != 0 && vector.size() != dim_) {
        throw std::runtime_error("embedding cache '" + path_.string() +
                                 "' holds dimension " + std::to_string(dim_) +
                                 ", got vector of dimension " +
                                 std::to_string(vector.size()));
    }
    const CacheKey key = key_for(model_id_, input);
    const std::string key_hex = hex(key);
    if (index_.contains(key_hex)) return;

    std::vector<float> quantized(vector.size());
    for (std::size_t i = 0; i < vector.size(); ++i) {
        quantized[i] = static_cast<float>(vector[i]);
    }
    if (dim_ == 0) dim_ = vector.size();
    index_.emplace(key_hex, entries_.size());
    entries_.emplace_back(key, std::move(quantized));
    dirty_ = true;
}

void EmbeddingCache::save() {
    if (!dirty_) return;
    std::string buf;
    buf.reserve(16 + entries_.size() * (32 + dim_ * 4));
    buf.append(kMagic, sizeof(kMagic));
    put_u32(buf, kVersion);
    put_u32(buf, static_cast<std::uint32_t>(dim_));
    for (const auto& [key, values] : entries_) {
        buf.append(reinterpret_cast<const char*>(key.data()), key.size());
        for (const float f : values) {
            put_u32(buf, std::bit_cast<std::uint32_t>(f));
        }
    }

    const std::filesystem::path tmp = path_.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("embedding cache: cannot write '" + tmp.string() + "'");
        }
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
        if (!out) {
            throw std::runtime_error("embedding cache: short write to '" + tmp.string() + "'");
        }
    }
    std::filesystem::rename(tmp, path_);
    dirty_ = false;
}

void EmbeddingCache::load() {
    std::ifstream in(path_, std::ios::binary);
    if (!in) {
        throw std::runtime_error("embedding cache: cannot open '" + path_.string() + "'");
    }
    std::string data((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    if (data.size() < 16 || std::memcmp(data.data(), kMagic, sizeof(kMagic)) != 0) {
        throw std::runtime_error("embedding cache: '" + path_.string() +
                                 "' is not a cache file");
    }
    const auto* p = reinterpret_cast<const unsigned char*>(data.data());
    const std::uint32_t version = get_u32(p + 8);
    if (version != kVersion) {
        throw std::runtime_error("embedding cache: unsupported version " +
                                 std::to_string(version));
    }
    dim_ = get_u32(p + 12);
    if (dim_ == 0) {
        throw std::runtime_error("embedding cache: '" + path_.string() +
                                 "' declares dimension 0");
    }
    const std::size_t entry_size = 32 + dim_ * 4;
    const std::size_t payload = data.size() - 16;
    if (payload % entry_size != 0) {
        throw std::runtime_error("embedding cache: '" + path_.string() + "' is truncated");
    }
    const std::size_t count = payload / entry_size;
    entries_.reserve(count);
    for (std::size_t e = 0; e < count; ++e) {
        const unsigned char* q = p + 16 + e * entry_size;
        CacheKey key{};
        std::memcpy(key.data(), q, 32);
        std::vector<float> values(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            values[i] = std::bit_cast<float>(get_u32(q + 32 + i * 4));
        }
        index_.emplace(hex(key), entries_.size());
        entries_.emplace_back(key, std::move(values));
    }
}

}  // namespace sindex
