#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "tifti/corpus.hpp"
#include "tifti/exprclass.hpp"
#include "tifti/seqlabel.hpp"
#include "tifti/temporal.hpp"

namespace tifti {

enum class Method { Timeline, SimTimeline, ExprTimeline, FullTifti };

const char* method_name(Method m);  // timeline | sim | expr-timeline | full
std::optional<Method> method_from_name(std::string_view name);

struct CascadeConfig {
    double tau = 0.9;  // expression confidence threshold, [0, 1]
    Method method = Method::FullTifti;
};

/// Original timeline plus one pseudo-document per expression: contents are
/// the revised sentence, timestamp is the mapped date. Pseudo documents sort
/// after real documents at equal timestamps. Dedup is not reapplied.
DocumentTimeline build_simulated_timeline(
    const DocumentTimeline& timeline,
    std::span<const std::pair<TimeExpression, RevisedSentence>> expressions);

struct DecodedDoc {
    DateStamp timestamp;
    bool is_pseudo = false;
    DocLabel label = DocLabel::Pre;
};

struct CascadePrediction {
    IntervalPrediction interval;
    std::vector<DecodedDoc> docs;  // the decoded timeline, for audit output
};

/// Pair each tagged expression with its revised sentence (doc timestamp and
/// expression id filled in).
std::vector<std::pair<TimeExpression, RevisedSentence>> revise_expressions(
    const DocumentTimeline& timeline, std::span<const TimeExpression> expressions);

/// The integrated predictor. Callers pair seq_model.trained_on with the
/// method's timeline kind (original for timeline/expr-timeline, simulated for
/// sim/full). Throws std::invalid_argument when the two models' feature
/// configs differ.
CascadePrediction predict_tifti_detailed(const PatientDrugExample& example,
                                         const SequenceLabelerModel& seq_model,
                                         const ExprModel& expr_model, const CascadeConfig& config,
                                         std::span<const DrugLexiconEntry> other_drugs = {});

IntervalPrediction predict_tifti(const PatientDrugExample& example,
                                 const SequenceLabelerModel& seq_model,
                                 const ExprModel& expr_model, const CascadeConfig& config,
                                 std::span<const DrugLexiconEntry> other_drugs = {});

/// Same cascade on a prebuilt timeline (lets callers reuse preprocessing).
CascadePrediction predict_from_timeline(const DocumentTimeline& timeline,
                                        const SequenceLabelerModel& seq_model,
                                        const ExprModel& expr_model, const CascadeConfig& config);

}  // namespace tifti
