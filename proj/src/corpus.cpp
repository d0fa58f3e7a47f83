#include "tifti/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include "json.hpp"
#include "tifti/features.hpp"
#include "tifti/text.hpp"

namespace tifti {

using nlohmann::json;

const char* doc_label_name(DocLabel l) {
    switch (l) {
        case DocLabel::Pre: return "PRE";
        case DocLabel::Mid: return "MID";
        case DocLabel::Post: return "POST";
    }
    return "?";
}

std::string CondensedDocument::joined_text() const {
    std::string out;
    for (const auto& s : sentences) {
        if (!out.empty()) out += ' ';
        out += s;
    }
    return out;
}

namespace {

[[noreturn]] void fail(int line_no, const std::string& what) {
    throw CorpusError("line " + std::to_string(line_no) + ": " + what);
}

DateStamp parse_date_field(const json& j, const char* field, int line_no) {
    if (!j.is_string()) fail(line_no, std::string(field) + " must be a \"YYYY-MM-DD\" string");
    auto d = DateStamp::parse_iso(j.get<std::string>());
    if (!d) fail(line_no, std::string(field) + ": invalid date '" + j.get<std::string>() + "'");
    return *d;
}

void validate_example(const PatientDrugExample& ex, int line_no) {
    if (ex.patient_id.empty()) fail(line_no, "patient_id empty");
    if (ex.drug.canonical_name.empty()) fail(line_no, "drug.canonical_name empty");
    if (ex.drug.synonyms.empty()) fail(line_no, "drug.synonyms empty");
    if (ex.documents.empty()) fail(line_no, "documents empty");
    for (const auto& doc : ex.documents) {
        if (trim(doc.text).empty()) fail(line_no, "document text empty");
    }
    bool mentioned = false;
    for (const auto& doc : ex.documents) {
        if (contains_mention(doc.text, ex.drug.synonyms)) {
            mentioned = true;
            break;
        }
    }
    if (!mentioned) fail(line_no, "no document mentions the drug");
    if (ex.gold) {
        const RegimenLabel& g = *ex.gold;
        if (!g.taken && (g.start || g.end)) fail(line_no, "gold.taken=false but dates present");
        if (g.taken && !g.start) fail(line_no, "gold.taken=true requires a start date");
        if (g.start && g.end && *g.end < *g.start) fail(line_no, "gold start after end");
    }
}

}  // namespace

PatientDrugExample parse_corpus_line(const std::string& line, int line_no) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) fail(line_no, "not a JSON object");

    PatientDrugExample ex;
    if (!j.contains("patient_id") || !j["patient_id"].is_string()) fail(line_no, "missing patient_id");
    ex.patient_id = j["patient_id"].get<std::string>();

    if (!j.contains("drug") || !j["drug"].is_object()) fail(line_no, "missing drug");
    const json& jd = j["drug"];
    if (!jd.contains("canonical_name") || !jd["canonical_name"].is_string())
        fail(line_no, "missing drug.canonical_name");
    ex.drug.canonical_name = jd["canonical_name"].get<std::string>();
    if (!jd.contains("synonyms") || !jd["synonyms"].is_array()) fail(line_no, "missing drug.synonyms");
    for (const auto& s : jd["synonyms"]) {
        if (!s.is_string()) fail(line_no, "drug.synonyms must be strings");
        ex.drug.synonyms.push_back(s.get<std::string>());
    }

    if (!j.contains("documents") || !j["documents"].is_array()) fail(line_no, "missing documents");
    for (const auto& d : j["documents"]) {
        if (!d.is_object() || !d.contains("timestamp") || !d.contains("text") || !d["text"].is_string())
            fail(line_no, "document needs timestamp and text");
        RawDocument doc;
        doc.timestamp = parse_date_field(d["timestamp"], "documents.timestamp", line_no);
        doc.text = d["text"].get<std::string>();
        ex.documents.push_back(std::move(doc));
    }

    if (j.contains("gold") && !j["gold"].is_null()) {
        const json& g = j["gold"];
        if (!g.is_object() || !g.contains("taken") || !g["taken"].is_boolean())
            fail(line_no, "gold needs boolean taken");
        RegimenLabel label;
        label.taken = g["taken"].get<bool>();
        if (g.contains("start") && !g["start"].is_null())
            label.start = parse_date_field(g["start"], "gold.start", line_no);
        if (g.contains("end") && !g["end"].is_null())
            label.end = parse_date_field(g["end"], "gold.end", line_no);
        ex.gold = label;
    }

    std::stable_sort(ex.documents.begin(), ex.documents.end(),
                     [](const RawDocument& a, const RawDocument& b) { return a.timestamp < b.timestamp; });
    validate_example(ex, line_no);
    return ex;
}

std::string corpus_line(const PatientDrugExample& ex) {
    json j;
    j["patient_id"] = ex.patient_id;
    j["drug"]["canonical_name"] = ex.drug.canonical_name;
    j["drug"]["synonyms"] = ex.drug.synonyms;
    json docs = json::array();
    for (const auto& d : ex.documents) {
        docs.push_back({{"timestamp", d.timestamp.iso()}, {"text", d.text}});
    }
    j["documents"] = std::move(docs);
    if (ex.gold) {
        json g;
        g["taken"] = ex.gold->taken;
        g["start"] = ex.gold->start ? json(ex.gold->start->iso()) : json(nullptr);
        g["end"] = ex.gold->end ? json(ex.gold->end->iso()) : json(nullptr);
        j["gold"] = std::move(g);
    }
    return j.dump();
}

std::vector<PatientDrugExample> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CorpusError("cannot open corpus file: " + path);
    std::vector<PatientDrugExample> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        out.push_back(parse_corpus_line(line, line_no));
    }
    return out;
}

void save_corpus(std::span<const PatientDrugExample> examples, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CorpusError("cannot write corpus file: " + path);
    for (const auto& ex : examples) {
        out << corpus_line(ex) << '\n';
    }
}

DocumentTimeline build_timeline(const PatientDrugExample& example,
                                std::span<const DrugLexiconEntry> other_drugs) {
    std::vector<MentionRule> rules;
    for (const auto& s : example.drug.synonyms) rules.push_back({s, "DRUG", 0});
    for (const auto& entry : other_drugs) {
        if (entry.canonical_name == example.drug.canonical_name) continue;
        for (const auto& s : entry.synonyms) rules.push_back({s, "OTHER-DRUG", 1});
    }

    // token-level check so the DRUG inside OTHER-DRUG does not count
    auto has_drug_token = [](const std::string& sentence) {
        for (const std::string& tok : tokenize(sentence, false)) {
            if (tok == "DRUG") return true;
        }
        return false;
    };

    DocumentTimeline timeline;
    std::unordered_set<std::string> seen;
    for (std::size_t di = 0; di < example.documents.size(); ++di) {
        const RawDocument& doc = example.documents[di];
        CondensedDocument cd;
        cd.timestamp = doc.timestamp;
        cd.origin = static_cast<int>(di);
        for (const std::string& raw : split_sentences(doc.text)) {
            std::string sub = replace_mentions(raw, rules);
            if (!has_drug_token(sub)) continue;     // no target-drug mention
            if (!seen.insert(sub).second) continue; // occurred previously
            cd.sentences.push_back(std::move(sub));
        }
        if (!cd.sentences.empty()) timeline.docs.push_back(std::move(cd));
    }
    return timeline;
}

std::vector<DocLabel> label_documents(const DocumentTimeline& timeline, const RegimenLabel& gold) {
    std::vector<DocLabel> out;
    out.reserve(timeline.docs.size());
    for (const auto& doc : timeline.docs) {
        if (!gold.taken || !gold.start) {
            out.push_back(DocLabel::Pre);
            continue;
        }
        if (doc.timestamp < *gold.start) {
            out.push_back(DocLabel::Pre);
        } else if (!gold.end || doc.timestamp < *gold.end) {
            out.push_back(DocLabel::Mid);
        } else {
            out.push_back(DocLabel::Post);
        }
    }
    return out;
}

}  // namespace tifti
