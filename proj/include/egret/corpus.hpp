#pragma once

// Evidence units and the corpus that owns them. Units are the smallest
// elements the pipeline ever scores or selects: one sentence of a document or
// one record of a structured source. Unit text is stored exactly as it
// appears in the (normalized) source; nothing downstream may merge, split, or
// rewrite it.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "egret/errors.hpp"
#include "egret/text.hpp"
#include "egret/wordlists.hpp"

namespace egret {

enum class UnitKind { sentence, record };

inline const char* unit_kind_name(UnitKind k) {
  return k == UnitKind::sentence ? "sentence" : "record";
}

struct EvidenceUnit {
  std::uint32_t unit_id = 0;  // global ingestion counter, starts at 0
  std::string text;           // verbatim source span, whitespace-trimmed
  std::string doc_id;
  std::uint32_t ordinal = 0;  // zero-based position within the document
  UnitKind kind = UnitKind::sentence;
};

// Half-open [begin, end) byte range of one sentence inside a document. Spans
// never overlap; the bytes between consecutive spans are whitespace only, so
// the original document is recoverable from spans plus gaps.
struct SentenceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Rule-based sentence boundary detection: a sentence ends at '.', '!' or '?'
// followed by whitespace and an ASCII uppercase letter, or at end of text. A
// period that terminates a listed abbreviation ("u.s.", "e.g.", ...) never
// ends a sentence. Trailing unterminated text forms a final span.
inline std::vector<SentenceSpan> segment_sentences(
    std::string_view text,
    const std::unordered_set<std::string>& abbreviations = default_abbreviation_set()) {
  std::vector<SentenceSpan> spans;
  const std::size_t n = text.size();
  std::size_t begin = 0;
  while (begin < n && is_space(text[begin])) ++begin;

  auto is_abbreviation = [&](std::size_t dot) {
    std::size_t rb = dot;
    while (rb > 0 && !is_space(text[rb - 1])) --rb;
    while (rb < dot && !is_alnum(text[rb])) ++rb;  // strip leading punctuation
    if (rb > dot) return false;
    return abbreviations.count(lowercase(text.substr(rb, dot - rb + 1))) > 0;
  };

  std::size_t i = begin;
  while (i < n) {
    const char c = text[i];
    if (c == '.' || c == '!' || c == '?') {
      bool boundary = false;
      std::size_t next = i + 1;
      if (next >= n) {
        boundary = true;
      } else if (is_space(text[next])) {
        while (next < n && is_space(text[next])) ++next;
        boundary = next >= n || is_ascii_upper(text[next]);
      }
      if (boundary && c == '.' && is_abbreviation(i)) boundary = false;
      if (boundary) {
        spans.push_back({begin, i + 1});
        begin = next;
        i = next;
        continue;
      }
    }
    ++i;
  }
  if (begin < n) {
    std::size_t end = n;
    while (end > begin && is_space(text[end - 1])) --end;
    if (end > begin) spans.push_back({begin, end});
  }
  return spans;
}

class Corpus {
 public:
  // One unit per segmented sentence of the normalized document text.
  // Whitespace-only documents yield zero units but still claim the doc_id.
  std::vector<EvidenceUnit> ingest_document(
      const std::string& doc_id, std::string_view document_text,
      const std::unordered_set<std::string>& abbreviations = default_abbreviation_set()) {
    require_new_doc(doc_id);
    const std::string norm = normalize_text(document_text);
    std::vector<EvidenceUnit> added;
    for (const SentenceSpan& span : segment_sentences(norm, abbreviations)) {
      const std::string_view sentence = trim(
          std::string_view(norm).substr(span.begin, span.end - span.begin));
      if (sentence.empty()) continue;
      added.push_back(append_unit(std::string(sentence), doc_id,
                                  static_cast<std::uint32_t>(added.size()),
                                  UnitKind::sentence));
    }
    register_doc(doc_id, added);
    return added;
  }

  // One unit per record, no segmentation. All records are validated before
  // anything is appended, so a failing call leaves the corpus unchanged.
  std::vector<EvidenceUnit> ingest_records(const std::string& doc_id,
                                           const std::vector<std::string>& records) {
    require_new_doc(doc_id);
    std::vector<std::string> texts;
    texts.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
      const std::string norm = normalize_text(records[i]);
      const std::string_view t = trim(norm);
      if (t.empty()) throw EmptyRecordError(doc_id, i);
      texts.emplace_back(t);
    }
    std::vector<EvidenceUnit> added;
    for (std::string& t : texts) {
      added.push_back(append_unit(std::move(t), doc_id,
                                  static_cast<std::uint32_t>(added.size()),
                                  UnitKind::record));
    }
    register_doc(doc_id, added);
    return added;
  }

  // Restores a unit stream exactly as previously serialized. unit_ids must
  // arrive in ingestion order.
  void restore_unit(const EvidenceUnit& u) {
    if (u.unit_id != units_.size()) {
      throw IoError("unit_id out of order while restoring corpus: " +
                    std::to_string(u.unit_id));
    }
    if (u.ordinal == 0 && doc_index_.count(u.doc_id)) {
      throw DuplicateDocumentError(u.doc_id);
    }
    doc_index_[u.doc_id].push_back(u.unit_id);
    units_.push_back(u);
  }

  bool has_doc(const std::string& doc_id) const { return doc_index_.count(doc_id) > 0; }
  std::size_t size() const { return units_.size(); }
  bool empty() const { return units_.empty(); }
  const std::vector<EvidenceUnit>& units() const { return units_; }
  const EvidenceUnit& unit(std::uint32_t unit_id) const { return units_.at(unit_id); }
  const std::map<std::string, std::vector<std::uint32_t>>& doc_index() const {
    return doc_index_;
  }

 private:
  void require_new_doc(const std::string& doc_id) const {
    if (has_doc(doc_id)) throw DuplicateDocumentError(doc_id);
  }

  EvidenceUnit append_unit(std::string text, const std::string& doc_id,
                           std::uint32_t ordinal, UnitKind kind) {
    EvidenceUnit u;
    u.unit_id = static_cast<std::uint32_t>(units_.size());
    u.text = std::move(text);
    u.doc_id = doc_id;
    u.ordinal = ordinal;
    u.kind = kind;
    units_.push_back(u);
    return u;
  }

  void register_doc(const std::string& doc_id, const std::vector<EvidenceUnit>& added) {
    auto& ids = doc_index_[doc_id];  // claims the doc_id even when empty
    for (const EvidenceUnit& u : added) ids.push_back(u.unit_id);
  }

  std::vector<EvidenceUnit> units_;
  std::map<std::string, std::vector<std::uint32_t>> doc_index_;
};

}  // namespace egret
