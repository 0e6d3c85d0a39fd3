#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "patchlens/tensor.hpp"
#include "patchlens/tokenizer.hpp"

namespace patchlens {

struct ModelConfig {
    std::size_t n_layers = 6;
    std::size_t n_heads = 12;
    std::size_t d_model = 768;
    std::size_t d_ff = 3072;
    std::size_t vocab_size = 30522;
    std::size_t max_positions = 512;
    float ln_eps = 1e-12f;

    std::size_t d_head() const { return d_model / n_heads; }

    void validate() const {
        if (n_layers == 0 || n_heads == 0 || d_model == 0 || d_ff == 0) {
            throw ShapeError("model config: zero-sized field");
        }
        if (d_model % n_heads != 0) {
            throw ShapeError("model config: d_model not divisible by n_heads");
        }
    }

    // The shipped bi-encoder: DistilBERT with 6 layers and 12 heads.
    static ModelConfig tasb() { return ModelConfig{}; }
};

// Named tensors of one checkpoint. Linear projection weights are stored
// transposed ([in x out]) so the forward pass is a plain row-major matmul;
// shape validation at load time happens against the checkpoint orientation.
struct WeightStore {
    std::unordered_map<std::string, Tensor> tensors;

    bool has(const std::string& name) const { return tensors.count(name) != 0; }

    const Tensor& get(const std::string& name) const {
        auto it = tensors.find(name);
        if (it == tensors.end()) throw LoadError("weights: missing tensor " + name);
        return it->second;
    }
};

std::size_t parameter_count(const WeightStore& w);

// Archive I/O. Format: 8-byte little-endian header length N, N bytes of
// UTF-8 JSON {name: {"dtype":"F32","shape":[...],"data_offsets":[b,e]}},
// then the raw little-endian float payload (offsets relative to payload
// start). Matches the format the public checkpoint ships in.
WeightStore load_weights(const std::string& path, const ModelConfig& config);
void save_weights(const std::string& path, const std::map<std::string, Tensor>& tensors);

// ---------------------------------------------------------------------
// Hook points
// ---------------------------------------------------------------------

enum class Site { resid_pre, attn_out, mlp_out, head_out };

const char* site_name(Site s);
Site site_from_name(const std::string& name);

struct HookPoint {
    std::size_t layer = 0;
    Site site = Site::resid_pre;
    std::optional<std::size_t> head;      // present exactly when site == head_out
    std::optional<std::size_t> position;  // block sites; nullopt patches every position
};

// Cache address: a hook point without the position component.
struct CacheKey {
    std::size_t layer;
    Site site;
    std::size_t head;  // 0 unless site == head_out

    bool operator<(const CacheKey& o) const {
        if (layer != o.layer) return layer < o.layer;
        if (site != o.site) return site < o.site;
        return head < o.head;
    }
};

class ActivationCache {
public:
    void store(const CacheKey& key, Tensor value);
    bool has(const CacheKey& key) const { return entries_.count(key) != 0; }
    const Tensor& get(const CacheKey& key) const;
    std::size_t size() const { return entries_.size(); }
    std::size_t seq_len() const { return seq_len_; }
    const std::map<CacheKey, Tensor>& entries() const { return entries_; }

private:
    std::map<CacheKey, Tensor> entries_;
    std::size_t seq_len_ = 0;
};

struct PatchSpec {
    std::vector<HookPoint> targets;
    const ActivationCache* source = nullptr;
};

struct CaptureSet {
    bool resid_pre = false;
    bool attn_out = false;
    bool mlp_out = false;
    bool head_out = false;

    static CaptureSet all() { return {true, true, true, true}; }
    static CaptureSet only(Site s) {
        CaptureSet c;
        c.set(s, true);
        return c;
    }
    void set(Site s, bool v);
    bool enabled(Site s) const;
    bool any() const { return resid_pre || attn_out || mlp_out || head_out; }
};

struct ForwardResult {
    Tensor cls;  // final hidden state at position 0, [d_model]
    ActivationCache cache;
};

// Full forward pass. At every hook point, in order: apply any patch
// targeting it (replacing the activation at the requested positions or
// head), then capture the possibly-replaced activation if requested.
ForwardResult forward(const WeightStore& w, const ModelConfig& cfg, const Encoding& enc,
                      const CaptureSet& capture = {}, const PatchSpec* patch = nullptr);

// Resume a run from the residual-stream input of `start_layer` (layer 0's
// resid_pre is the embedding output). `hidden` is [L x d_model]. Patches
// at layers < start_layer are rejected. The patching engine uses this to
// share the unpatched prefix between per-position runs.
ForwardResult forward_from_layer(const WeightStore& w, const ModelConfig& cfg,
                                 std::size_t start_layer, Tensor hidden,
                                 const std::vector<int>& attention_mask,
                                 const CaptureSet& capture = {},
                                 const PatchSpec* patch = nullptr);

// Embedding output = resid_pre of layer 0.
Tensor embed(const WeightStore& w, const ModelConfig& cfg, const Encoding& enc);

// Dot product of the two pooled CLS embeddings.
float relevance_score(const Tensor& query_cls, const Tensor& doc_cls);

}  // namespace patchlens
