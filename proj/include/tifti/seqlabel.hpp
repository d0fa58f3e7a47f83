#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tifti/corpus.hpp"
#include "tifti/features.hpp"

namespace tifti {

struct LabelDistribution {
    double p_pre = 0, p_mid = 0, p_post = 0;

    double operator[](int i) const { return i == 0 ? p_pre : (i == 1 ? p_mid : p_post); }
};

enum class LabelerVariant { IndependentLogistic, BiRnn };
enum class TimelineKind { Original, Simulated };

const char* variant_name(LabelerVariant v);
const char* timeline_kind_name(TimelineKind k);

struct TrainConfig {
    double learning_rate = 0.1;
    int epochs = 300;
    double l2 = 1e-4;
    std::uint64_t seed = 0;
};

double default_learning_rate(LabelerVariant v);

/// Sequence labeler over document timelines. Parameters live in one flat
/// array; the layout is fixed by the model file format:
///   INDEPENDENT-LOGISTIC: w[3][dim] row-major, then b[3].
///   BIRNN: proj[dim][d_in] feature-major; for each direction (forward then
///   backward): wz[h][d_in], uz[h][h], bz[h], wr..., wh...; then
///   out_w[3][2h] (forward half first), out_b[3].
/// Inputs are L2-normalized hashed n-gram counts of each document's text.
struct SequenceLabelerModel {
    LabelerVariant variant = LabelerVariant::IndependentLogistic;
    FeatureConfig features;
    TimelineKind trained_on = TimelineKind::Original;
    std::uint64_t seed = 0;
    int d_in = 64;   // BIRNN input projection width
    int hidden = 32; // BIRNN per-direction hidden size
    std::vector<double> params;

    std::size_t param_count() const;
};

/// Seeded uniform(-0.1, 0.1) initialization over the flat parameter array.
SequenceLabelerModel make_seq_model(LabelerVariant variant, const FeatureConfig& features,
                                    TimelineKind trained_on, std::uint64_t seed);

struct PreparedSeqExample {
    std::vector<FeatureVector> docs;  // L2-normalized
    std::vector<DocLabel> labels;
};

PreparedSeqExample prepare_seq_example(const DocumentTimeline& timeline, const RegimenLabel& gold,
                                       const FeatureConfig& features);

/// Mean cross-entropy over all documents in the batch plus l2 * ||params||^2.
/// When grad is non-null it receives d(loss)/d(params).
double seq_batch_loss(const SequenceLabelerModel& model,
                      std::span<const PreparedSeqExample> batch, double l2,
                      std::vector<double>* grad);

std::vector<LabelDistribution> predict_doc_probs(const SequenceLabelerModel& model,
                                                 const DocumentTimeline& timeline);

/// Highest-scoring monotone sequence PRE* MID* POST* by summed log
/// probabilities; ties prefer more PRE, then more MID.
std::vector<DocLabel> constrained_decode(std::span<const LabelDistribution> probs);

enum class EvidenceSource { Timeline, Expression };

const char* evidence_name(EvidenceSource e);

struct IntervalPrediction {
    bool taken = false;
    std::optional<DateStamp> start;
    std::optional<DateStamp> end;  // absent with taken=true means ongoing
    EvidenceSource start_evidence = EvidenceSource::Timeline;
    EvidenceSource end_evidence = EvidenceSource::Timeline;

    bool ongoing() const { return taken && !end.has_value(); }
};

/// Start = first MID timestamp (first POST if decoding yielded no MID),
/// end = first POST timestamp or ongoing. No MID and no POST means not taken.
IntervalPrediction interval_from_labels(std::span<const DocLabel> labels,
                                        std::span<const DateStamp> timestamps);

SequenceLabelerModel train_sequence_labeler(
    std::span<const std::pair<DocumentTimeline, RegimenLabel>> examples, const TrainConfig& config,
    LabelerVariant variant, const FeatureConfig& features,
    TimelineKind trained_on = TimelineKind::Original);

SequenceLabelerModel train_sequence_labeler_prepared(std::span<const PreparedSeqExample> batch,
                                                     const TrainConfig& config,
                                                     LabelerVariant variant,
                                                     const FeatureConfig& features,
                                                     TimelineKind trained_on);

}  // namespace tifti
