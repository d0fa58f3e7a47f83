#include "tifti/exprclass.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tifti/rng.hpp"

namespace tifti {

const char* expr_class_name(ExprClass c) {
    switch (c) {
        case ExprClass::Start: return "START";
        case ExprClass::End: return "END";
        case ExprClass::Neither: return "NEITHER";
    }
    return "?";
}

ExprModel make_expr_model(const FeatureConfig& features, int delta_days, std::uint64_t seed) {
    if (!features.valid()) throw std::invalid_argument("invalid feature config");
    if (delta_days < 0) throw std::invalid_argument("delta_days must be >= 0");
    ExprModel m;
    m.features = features;
    m.delta_days = delta_days;
    m.seed = seed;
    Rng rng(seed);
    m.params.resize(m.param_count());
    for (double& p : m.params) p = rng.uniform(-0.1, 0.1);
    return m;
}

RevisedSentence make_revised_sentence(const std::string& sentence, const TimeExpression& expr) {
    if (expr.begin > expr.end || expr.end > sentence.size())
        throw std::invalid_argument("expression span out of bounds");
    RevisedSentence rs;
    rs.text = sentence.substr(0, expr.begin) + "TIME " + bucket_name(expr.bucket) +
              sentence.substr(expr.end);
    rs.mapped_date = expr.mapped_date;
    rs.expr_id = -1;
    return rs;
}

ExprClass proxy_label(DateStamp mapped_date, const RegimenLabel& gold, int delta_days) {
    if (!gold.taken) return ExprClass::Neither;
    std::int64_t ds = gold.start ? abs_day_diff(mapped_date, *gold.start) : -1;
    std::int64_t de = gold.end ? abs_day_diff(mapped_date, *gold.end) : -1;
    bool start_ok = gold.start && ds <= delta_days;
    bool end_ok = gold.end && de <= delta_days;
    if (start_ok && end_ok) return ds <= de ? ExprClass::Start : ExprClass::End;
    if (start_ok) return ExprClass::Start;
    if (end_ok) return ExprClass::End;
    return ExprClass::Neither;
}

namespace {

FeatureVector normalized(FeatureVector v) {
    double n = l2_norm(v);
    if (n > 0) {
        for (auto& [idx, w] : v.entries) w /= n;
    }
    return v;
}

void softmax3(const double* logits, double* p) {
    double mx = std::max(logits[0], std::max(logits[1], logits[2]));
    double s = 0;
    for (int i = 0; i < 3; ++i) {
        p[i] = std::exp(logits[i] - mx);
        s += p[i];
    }
    for (int i = 0; i < 3; ++i) p[i] /= s;
}

double log_softmax_at(const double* logits, int y) {
    double mx = std::max(logits[0], std::max(logits[1], logits[2]));
    double s = 0;
    for (int i = 0; i < 3; ++i) s += std::exp(logits[i] - mx);
    return logits[y] - mx - std::log(s);
}

}  // namespace

PreparedExprExample prepare_expr_example(const RevisedSentence& rs, ExprClass y,
                                         const FeatureConfig& features) {
    return {normalized(featurize(rs.text, features)), y};
}

std::array<double, 3> expr_class_weights(std::span<const PreparedExprExample> batch) {
    // inverse frequency, scaled so present classes average to 1
    std::array<double, 3> counts{0, 0, 0};
    for (const auto& ex : batch) counts[static_cast<std::size_t>(ex.y)] += 1;
    std::array<double, 3> w{0, 0, 0};
    int present = 0;
    for (int c = 0; c < 3; ++c) {
        if (counts[static_cast<std::size_t>(c)] > 0) ++present;
    }
    for (int c = 0; c < 3; ++c) {
        if (counts[static_cast<std::size_t>(c)] > 0) {
            w[static_cast<std::size_t>(c)] = static_cast<double>(batch.size()) /
                                             (static_cast<double>(present) * counts[static_cast<std::size_t>(c)]);
        }
    }
    return w;
}

double expr_batch_loss(const ExprModel& model, std::span<const PreparedExprExample> batch,
                       std::span<const double> class_weights, double l2,
                       std::vector<double>* grad) {
    if (batch.empty()) throw std::invalid_argument("empty batch");
    if (grad) grad->assign(model.params.size(), 0.0);
    const std::uint32_t dim = model.features.dim;
    const double* w = model.params.data();
    const double* b = model.params.data() + 3ull * dim;
    const double inv_n = 1.0 / static_cast<double>(batch.size());

    double loss = 0;
    for (const auto& ex : batch) {
        double logits[3] = {b[0], b[1], b[2]};
        for (const auto& [idx, v] : ex.x.entries) {
            for (int c = 0; c < 3; ++c) logits[c] += w[static_cast<std::size_t>(c) * dim + idx] * v;
        }
        int y = static_cast<int>(ex.y);
        double cw = class_weights[static_cast<std::size_t>(y)];
        loss -= cw * log_softmax_at(logits, y) * inv_n;
        if (grad) {
            double p[3];
            softmax3(logits, p);
            double* gw = grad->data();
            double* gb = grad->data() + 3ull * dim;
            for (int c = 0; c < 3; ++c) {
                double d = cw * (p[c] - (c == y ? 1.0 : 0.0)) * inv_n;
                gb[c] += d;
                for (const auto& [idx, v] : ex.x.entries) {
                    gw[static_cast<std::size_t>(c) * dim + idx] += d * v;
                }
            }
        }
    }
    double reg = 0;
    for (double p : model.params) reg += p * p;
    loss += l2 * reg;
    if (grad) {
        for (std::size_t i = 0; i < model.params.size(); ++i) (*grad)[i] += 2.0 * l2 * model.params[i];
    }
    return loss;
}

ExprModel train_expression_classifier(std::span<const std::pair<RevisedSentence, ExprClass>> data,
                                      const TrainConfig& config, const FeatureConfig& features,
                                      int delta_days) {
    if (data.empty()) throw std::invalid_argument("empty training set");
    if (config.learning_rate <= 0 || config.epochs <= 0)
        throw std::invalid_argument("learning rate and epochs must be positive");
    std::vector<PreparedExprExample> batch;
    batch.reserve(data.size());
    for (const auto& [rs, y] : data) batch.push_back(prepare_expr_example(rs, y, features));
    std::array<double, 3> cw = expr_class_weights(batch);

    ExprModel model = make_expr_model(features, delta_days, config.seed);
    std::vector<double> grad;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        expr_batch_loss(model, batch, cw, config.l2, &grad);
        for (std::size_t i = 0; i < model.params.size(); ++i) {
            model.params[i] -= config.learning_rate * grad[i];
        }
    }
    return model;
}

std::array<double, 3> score_expression(const ExprModel& model, const RevisedSentence& rs) {
    FeatureVector x = normalized(featurize(rs.text, model.features));
    const std::uint32_t dim = model.features.dim;
    const double* w = model.params.data();
    const double* b = model.params.data() + 3ull * dim;
    double logits[3] = {b[0], b[1], b[2]};
    for (const auto& [idx, v] : x.entries) {
        for (int c = 0; c < 3; ++c) logits[c] += w[static_cast<std::size_t>(c) * dim + idx] * v;
    }
    std::array<double, 3> p;
    softmax3(logits, p.data());
    return p;
}

}  // namespace tifti
