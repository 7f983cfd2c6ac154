#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace sindex {

using CacheKey = std::array<std::uint8_t, 32>;

// Append-only embedding store keyed by SHA-256(model_id, input). On disk:
// 8-byte magic, u32 version, u32 dim, then per entry a 32-byte key followed
// by dim little-endian f32 values. Entries keep insertion order so repeated
// runs produce byte-identical files; save() commits via atomic rename.
class EmbeddingCache {
public:
    EmbeddingCache(std::filesystem::path path, std::string model_id);

    static CacheKey key_for(const std::string& model_id, const std::string& input);

    std::size_t size() const { return entries_.size(); }
    std::size_t dim() const { return dim_; }  // 0 until first entry
    const std::filesystem::path& path() const { return path_; }
    const std::string& model_id() const { return model_id_; }
    bool dirty() const { return dirty_; }

    bool contains(const std::string& input) const;
    std::optional<std::vector<double>> lookup(const std::string& input) const;

    // Values are stored as f32; callers see the same quantization a reload
    // would produce. Re-inserting an existing input is a no-op; inserting a
    // vector whose dimension differs from the file's is an error.
    void insert(const std::string& input, const std::vector<double>& vector);

    void save();

private:
    std::filesystem::path path_;
    std::string model_id_;
    std::size_t dim_ = 0;
    std::vector<std::pair<CacheKey, std::vector<float>>> entries_;
    std::unordered_map<std::string, std::size_t> index_;  // hex key -> entry
    bool dirty_ = false;

    void load();
};

}  // namespace sindex
