#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tifti/corpus.hpp"
#include "tifti/features.hpp"
#include "tifti/seqlabel.hpp"
#include "tifti/temporal.hpp"

namespace tifti {

enum class ExprClass { Start, End, Neither };

const char* expr_class_name(ExprClass c);

/// Sentence with its time expression replaced by "TIME <bucket-name>".
struct RevisedSentence {
    std::string text;
    DateStamp mapped_date;
    DateStamp doc_timestamp;
    int expr_id = -1;
};

/// l2-regularized multinomial logistic regression over revised-sentence
/// n-grams. Same flat layout as the logistic sequence labeler: w[3][dim]
/// row-major then b[3]. Class order START, END, NEITHER.
struct ExprModel {
    FeatureConfig features;
    int delta_days = 3;  // the proxy window the model was trained with
    std::uint64_t seed = 0;
    std::vector<double> params;

    std::size_t param_count() const { return 3ull * features.dim + 3; }
};

ExprModel make_expr_model(const FeatureConfig& features, int delta_days, std::uint64_t seed);

RevisedSentence make_revised_sentence(const std::string& sentence, const TimeExpression& expr);

/// Noisy proxy label: START/END when the mapped date lands within delta_days
/// of the gold start/end (closer endpoint wins, exact ties go to START),
/// NEITHER otherwise or when the drug was not taken.
ExprClass proxy_label(DateStamp mapped_date, const RegimenLabel& gold, int delta_days);

struct PreparedExprExample {
    FeatureVector x;  // L2-normalized
    ExprClass y;
};

PreparedExprExample prepare_expr_example(const RevisedSentence& rs, ExprClass y,
                                         const FeatureConfig& features);

/// Weighted mean cross-entropy (inverse class frequency weights, normalized to
/// mean 1 over the batch) plus l2 * ||params||^2.
double expr_batch_loss(const ExprModel& model, std::span<const PreparedExprExample> batch,
                       std::span<const double> class_weights, double l2, std::vector<double>* grad);

std::array<double, 3> expr_class_weights(std::span<const PreparedExprExample> batch);

ExprModel train_expression_classifier(std::span<const std::pair<RevisedSentence, ExprClass>> data,
                                      const TrainConfig& config, const FeatureConfig& features,
                                      int delta_days = 3);

/// P(START), P(END), P(NEITHER) for a revised sentence.
std::array<double, 3> score_expression(const ExprModel& model, const RevisedSentence& rs);

}  // namespace tifti
