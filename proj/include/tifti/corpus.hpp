#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tifti/dates.hpp"

namespace tifti {

class CorpusError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct DrugLexiconEntry {
    std::string canonical_name;
    std::vector<std::string> synonyms;  // generic + brand surfaces, non-empty
};

struct RawDocument {
    DateStamp timestamp;
    std::string text;
};

struct RegimenLabel {
    bool taken = false;
    std::optional<DateStamp> start;
    std::optional<DateStamp> end;  // absent while taken means ongoing

    bool ongoing() const { return taken && !end.has_value(); }
};

struct PatientDrugExample {
    std::string patient_id;
    DrugLexiconEntry drug;
    std::vector<RawDocument> documents;  // sorted ascending, stable
    std::optional<RegimenLabel> gold;
};

struct CondensedDocument {
    DateStamp timestamp;
    std::vector<std::string> sentences;  // every sentence contains DRUG
    bool is_pseudo = false;
    int origin = -1;  // source document index, or expression id for pseudo docs

    std::string joined_text() const;
};

struct DocumentTimeline {
    std::vector<CondensedDocument> docs;  // ascending; pseudo after real at equal timestamps
};

enum class DocLabel { Pre, Mid, Post };

const char* doc_label_name(DocLabel l);

/// One record per line, JSON objects. Throws CorpusError with the offending
/// line number on malformed input or invariant violations.
std::vector<PatientDrugExample> load_corpus(const std::string& path);
void save_corpus(std::span<const PatientDrugExample> examples, const std::string& path);

PatientDrugExample parse_corpus_line(const std::string& line, int line_no);
std::string corpus_line(const PatientDrugExample& example);

/// Sentence-split, filter to drug-mentioning sentences, dedup repeated
/// sentences across the timeline, and substitute DRUG / OTHER-DRUG
/// placeholders. Substitution happens before the dedup comparison.
DocumentTimeline build_timeline(const PatientDrugExample& example,
                                std::span<const DrugLexiconEntry> other_drugs);

/// PRE before the start date, MID inside the interval, POST at or after the
/// end date. taken=false labels everything PRE.
std::vector<DocLabel> label_documents(const DocumentTimeline& timeline, const RegimenLabel& gold);

}  // namespace tifti
