#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "patchlens/errors.hpp"

namespace patchlens {

// Vocabulary file: UTF-8 text, one token per line, id = zero-based line
// number. [PAD], [UNK], [CLS], [SEP] must all be present.
struct Vocab {
    std::unordered_map<std::string, int> token_to_id;
    std::vector<std::string> id_to_token;
    int pad_id = -1;
    int unk_id = -1;
    int cls_id = -1;
    int sep_id = -1;

    int size() const { return static_cast<int>(id_to_token.size()); }
    bool contains(const std::string& tok) const { return token_to_id.count(tok) != 0; }
    int id(const std::string& tok) const {
        auto it = token_to_id.find(tok);
        return it == token_to_id.end() ? unk_id : it->second;
    }
};

Vocab load_vocab(const std::string& path);

// Token-position range [begin, end) produced by one basic word.
struct WordSpan {
    std::size_t word_index;
    std::size_t begin;
    std::size_t end;
};

struct Encoding {
    std::vector<int> ids;
    std::vector<int> attention_mask;
    std::vector<WordSpan> word_spans;
    // Length before padding: [CLS] ... [SEP] inclusive. attention_mask can
    // be all-ones past this point in the unmasked LNC1 mode, so the length
    // is tracked explicitly.
    std::size_t seq_len = 0;

    std::size_t padded_len() const { return ids.size(); }
};

// Uncased-BERT style pre-tokenization: lowercase + accent fold, CJK
// characters split one per token, punctuation split into its own tokens.
// Returns the "basic words" that WordPiece runs on.
std::vector<std::string> basic_tokenize(const std::string& text);

// basic_tokenize minus punctuation-only tokens; this is the word split the
// perturbations and query terms operate on.
std::vector<std::string> word_tokens(const std::string& text);

// [CLS] + greedy longest-match WordPiece + [SEP], truncated so [SEP]
// always fits in max_len. Empty text yields [CLS][SEP]. word_spans cover
// the non-special positions, one span per basic word (the last one may be
// clipped by truncation).
Encoding encode(const std::string& text, const Vocab& vocab, std::size_t max_len = 512);

// Number of WordPiece subtokens the word produces (>= 1; unknown -> 1).
std::size_t word_token_count(const std::string& word, const Vocab& vocab);

// Indices of case-insensitive whole-word matches of term in doc_words.
std::vector<std::size_t> match_word_positions(const std::vector<std::string>& doc_words,
                                              const std::string& term);

// Extend with [PAD] up to target_len. masked=true gives the pads
// attention_mask 0 (standard); masked=false leaves them visible, the
// alternate LNC1 baseline mode.
void pad_encoding(Encoding& enc, std::size_t target_len, const Vocab& vocab, bool masked = true);

// Lowercase a single word (ASCII + Latin-1/Latin-Ext-A uppercase), keeping
// accents. Used for term matching at text level.
std::string lowercase_word(const std::string& word);

}  // namespace patchlens
