#include "tifti/seqlabel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tifti/rng.hpp"

namespace tifti {

const char* variant_name(LabelerVariant v) {
    return v == LabelerVariant::IndependentLogistic ? "INDEPENDENT-LOGISTIC" : "BIRNN";
}

const char* timeline_kind_name(TimelineKind k) {
    return k == TimelineKind::Original ? "ORIGINAL" : "SIMULATED";
}

const char* evidence_name(EvidenceSource e) {
    return e == EvidenceSource::Timeline ? "TIMELINE" : "EXPRESSION";
}

double default_learning_rate(LabelerVariant v) {
    return v == LabelerVariant::IndependentLogistic ? 0.1 : 0.01;
}

namespace {

constexpr int kLabels = 3;

int label_index(DocLabel l) {
    return static_cast<int>(l);
}

struct DirOffsets {
    std::size_t wz, uz, bz, wr, ur, br, wh, uh, bh;
};

struct BiRnnOffsets {
    std::size_t proj = 0;  // [dim][d_in], feature-major
    DirOffsets fwd{}, bwd{};
    std::size_t out_w = 0, out_b = 0;
    std::size_t total = 0;
};

BiRnnOffsets birnn_offsets(std::uint32_t dim, int d_in, int h) {
    BiRnnOffsets o;
    std::size_t pos = 0;
    o.proj = pos;
    pos += static_cast<std::size_t>(dim) * static_cast<std::size_t>(d_in);
    auto dir = [&](DirOffsets& d) {
        auto take = [&](std::size_t n) {
            std::size_t at = pos;
            pos += n;
            return at;
        };
        std::size_t hd = static_cast<std::size_t>(h) * static_cast<std::size_t>(d_in);
        std::size_t hh = static_cast<std::size_t>(h) * static_cast<std::size_t>(h);
        d.wz = take(hd); d.uz = take(hh); d.bz = take(static_cast<std::size_t>(h));
        d.wr = take(hd); d.ur = take(hh); d.br = take(static_cast<std::size_t>(h));
        d.wh = take(hd); d.uh = take(hh); d.bh = take(static_cast<std::size_t>(h));
    };
    dir(o.fwd);
    dir(o.bwd);
    o.out_w = pos;
    pos += static_cast<std::size_t>(kLabels) * 2 * static_cast<std::size_t>(h);
    o.out_b = pos;
    pos += kLabels;
    o.total = pos;
    return o;
}

// y += M x with row-major M (rows x cols)
void matvec_add(const double* m, int rows, int cols, const double* x, double* y) {
    for (int r = 0; r < rows; ++r) {
        const double* row = m + static_cast<std::size_t>(r) * cols;
        double s = 0;
        for (int c = 0; c < cols; ++c) s += row[c] * x[c];
        y[r] += s;
    }
}

// y += M^T d  (M rows x cols, d has rows entries, y has cols entries)
void matvec_t_add(const double* m, int rows, int cols, const double* d, double* y) {
    for (int r = 0; r < rows; ++r) {
        const double* row = m + static_cast<std::size_t>(r) * cols;
        double dv = d[r];
        for (int c = 0; c < cols; ++c) y[c] += row[c] * dv;
    }
}

// M += d (outer) x
void outer_add(double* m, int rows, int cols, const double* d, const double* x) {
    for (int r = 0; r < rows; ++r) {
        double* row = m + static_cast<std::size_t>(r) * cols;
        double dv = d[r];
        for (int c = 0; c < cols; ++c) row[c] += dv * x[c];
    }
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

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

FeatureVector normalized(FeatureVector v) {
    double n = l2_norm(v);
    if (n > 0) {
        for (auto& [idx, w] : v.entries) w /= n;
    }
    return v;
}

// Per-step activations cached for backprop.
struct GruTrace {
    std::vector<double> z, r, c, h, rh;  // hidden-sized
};

struct GruParamView {
    const double* wz; const double* uz; const double* bz;
    const double* wr; const double* ur; const double* br;
    const double* wh; const double* uh; const double* bh;
};

GruParamView view_dir(const std::vector<double>& p, const DirOffsets& d) {
    return {p.data() + d.wz, p.data() + d.uz, p.data() + d.bz,
            p.data() + d.wr, p.data() + d.ur, p.data() + d.br,
            p.data() + d.wh, p.data() + d.uh, p.data() + d.bh};
}

void gru_step(const GruParamView& g, int h, int d_in, const double* u, const double* hprev,
              GruTrace& trace) {
    trace.z.assign(static_cast<std::size_t>(h), 0.0);
    trace.r.assign(static_cast<std::size_t>(h), 0.0);
    trace.c.assign(static_cast<std::size_t>(h), 0.0);
    trace.h.assign(static_cast<std::size_t>(h), 0.0);
    trace.rh.assign(static_cast<std::size_t>(h), 0.0);
    std::vector<double> az(g.bz, g.bz + h), ar(g.br, g.br + h), ah(g.bh, g.bh + h);
    matvec_add(g.wz, h, d_in, u, az.data());
    matvec_add(g.uz, h, h, hprev, az.data());
    matvec_add(g.wr, h, d_in, u, ar.data());
    matvec_add(g.ur, h, h, hprev, ar.data());
    for (int i = 0; i < h; ++i) {
        trace.z[static_cast<std::size_t>(i)] = sigmoid(az[static_cast<std::size_t>(i)]);
        trace.r[static_cast<std::size_t>(i)] = sigmoid(ar[static_cast<std::size_t>(i)]);
        trace.rh[static_cast<std::size_t>(i)] = trace.r[static_cast<std::size_t>(i)] * hprev[i];
    }
    matvec_add(g.wh, h, d_in, u, ah.data());
    matvec_add(g.uh, h, h, trace.rh.data(), ah.data());
    for (int i = 0; i < h; ++i) {
        trace.c[static_cast<std::size_t>(i)] = std::tanh(ah[static_cast<std::size_t>(i)]);
        trace.h[static_cast<std::size_t>(i)] =
            (1.0 - trace.z[static_cast<std::size_t>(i)]) * hprev[i] +
            trace.z[static_cast<std::size_t>(i)] * trace.c[static_cast<std::size_t>(i)];
    }
}

struct GruGradView {
    double* wz; double* uz; double* bz;
    double* wr; double* ur; double* br;
    double* wh; double* uh; double* bh;
};

GruGradView grad_dir(std::vector<double>& p, const DirOffsets& d) {
    return {p.data() + d.wz, p.data() + d.uz, p.data() + d.bz,
            p.data() + d.wr, p.data() + d.ur, p.data() + d.br,
            p.data() + d.wh, p.data() + d.uh, p.data() + d.bh};
}

// Accumulates parameter gradients; writes dh_prev and du for this step.
void gru_step_back(const GruParamView& g, GruGradView& gg, int h, int d_in, const double* u,
                   const double* hprev, const GruTrace& trace, const double* dh, double* dh_prev,
                   double* du) {
    std::vector<double> dz(static_cast<std::size_t>(h)), dc(static_cast<std::size_t>(h)),
        dah(static_cast<std::size_t>(h)), dar(static_cast<std::size_t>(h)),
        daz(static_cast<std::size_t>(h)), drh(static_cast<std::size_t>(h)),
        dr(static_cast<std::size_t>(h));
    for (int i = 0; i < h; ++i) {
        std::size_t si = static_cast<std::size_t>(i);
        dz[si] = dh[i] * (trace.c[si] - hprev[i]);
        dc[si] = dh[i] * trace.z[si];
        dh_prev[i] += dh[i] * (1.0 - trace.z[si]);
        dah[si] = dc[si] * (1.0 - trace.c[si] * trace.c[si]);
        daz[si] = dz[si] * trace.z[si] * (1.0 - trace.z[si]);
    }
    outer_add(gg.wh, h, d_in, dah.data(), u);
    outer_add(gg.uh, h, h, dah.data(), trace.rh.data());
    for (int i = 0; i < h; ++i) gg.bh[i] += dah[static_cast<std::size_t>(i)];
    matvec_t_add(g.uh, h, h, dah.data(), drh.data());
    for (int i = 0; i < h; ++i) {
        std::size_t si = static_cast<std::size_t>(i);
        dr[si] = drh[si] * hprev[i];
        dh_prev[i] += drh[si] * trace.r[si];
        dar[si] = dr[si] * trace.r[si] * (1.0 - trace.r[si]);
    }
    outer_add(gg.wr, h, d_in, dar.data(), u);
    outer_add(gg.ur, h, h, dar.data(), hprev);
    for (int i = 0; i < h; ++i) gg.br[i] += dar[static_cast<std::size_t>(i)];
    matvec_t_add(g.ur, h, h, dar.data(), dh_prev);
    outer_add(gg.wz, h, d_in, daz.data(), u);
    outer_add(gg.uz, h, h, daz.data(), hprev);
    for (int i = 0; i < h; ++i) gg.bz[i] += daz[static_cast<std::size_t>(i)];
    matvec_t_add(g.uz, h, h, daz.data(), dh_prev);
    matvec_t_add(g.wh, h, d_in, dah.data(), du);
    matvec_t_add(g.wr, h, d_in, dar.data(), du);
    matvec_t_add(g.wz, h, d_in, daz.data(), du);
}

void project(const std::vector<double>& params, std::size_t proj_off, int d_in,
             const FeatureVector& x, double* u) {
    std::fill(u, u + d_in, 0.0);
    for (const auto& [idx, w] : x.entries) {
        const double* block = params.data() + proj_off + static_cast<std::size_t>(idx) * d_in;
        for (int r = 0; r < d_in; ++r) u[r] += block[r] * w;
    }
}

}  // namespace

std::size_t SequenceLabelerModel::param_count() const {
    if (variant == LabelerVariant::IndependentLogistic) {
        return static_cast<std::size_t>(kLabels) * features.dim + kLabels;
    }
    return birnn_offsets(features.dim, d_in, hidden).total;
}

SequenceLabelerModel make_seq_model(LabelerVariant variant, const FeatureConfig& features,
                                    TimelineKind trained_on, std::uint64_t seed) {
    if (!features.valid()) throw std::invalid_argument("invalid feature config");
    SequenceLabelerModel m;
    m.variant = variant;
    m.features = features;
    m.trained_on = trained_on;
    m.seed = seed;
    Rng rng(seed);
    m.params.resize(m.param_count());
    for (double& p : m.params) p = rng.uniform(-0.1, 0.1);
    return m;
}

PreparedSeqExample prepare_seq_example(const DocumentTimeline& timeline, const RegimenLabel& gold,
                                       const FeatureConfig& features) {
    if (timeline.docs.empty()) throw std::invalid_argument("empty timeline");
    PreparedSeqExample ex;
    ex.labels = label_documents(timeline, gold);
    ex.docs.reserve(timeline.docs.size());
    for (const auto& doc : timeline.docs) {
        ex.docs.push_back(normalized(featurize(doc.joined_text(), features)));
    }
    return ex;
}

namespace {

double logistic_batch_loss(const SequenceLabelerModel& model,
                           std::span<const PreparedSeqExample> batch,
                           std::vector<double>* grad) {
    const std::uint32_t dim = model.features.dim;
    std::size_t total_docs = 0;
    for (const auto& ex : batch) total_docs += ex.docs.size();
    if (total_docs == 0) throw std::invalid_argument("empty batch");
    const double inv_m = 1.0 / static_cast<double>(total_docs);
    const double* w = model.params.data();
    const double* b = model.params.data() + static_cast<std::size_t>(kLabels) * dim;

    double loss = 0;
    for (const auto& ex : batch) {
        for (std::size_t t = 0; t < ex.docs.size(); ++t) {
            const FeatureVector& x = ex.docs[t];
            double logits[3] = {b[0], b[1], b[2]};
            for (const auto& [idx, v] : x.entries) {
                for (int c = 0; c < kLabels; ++c) logits[c] += w[static_cast<std::size_t>(c) * dim + idx] * v;
            }
            int y = label_index(ex.labels[t]);
            loss -= log_softmax_at(logits, y) * inv_m;
            if (grad) {
                double p[3];
                softmax3(logits, p);
                double* gw = grad->data();
                double* gb = grad->data() + static_cast<std::size_t>(kLabels) * dim;
                for (int c = 0; c < kLabels; ++c) {
                    double d = (p[c] - (c == y ? 1.0 : 0.0)) * inv_m;
                    gb[c] += d;
                    for (const auto& [idx, v] : x.entries) {
                        gw[static_cast<std::size_t>(c) * dim + idx] += d * v;
                    }
                }
            }
        }
    }
    return loss;
}

double birnn_batch_loss(const SequenceLabelerModel& model,
                        std::span<const PreparedSeqExample> batch,
                        std::vector<double>* grad) {
    const int h = model.hidden, d_in = model.d_in;
    const BiRnnOffsets off = birnn_offsets(model.features.dim, d_in, h);
    const std::vector<double>& P = model.params;
    GruParamView gf = view_dir(P, off.fwd), gb = view_dir(P, off.bwd);
    const double* wo = P.data() + off.out_w;
    const double* bo = P.data() + off.out_b;

    std::size_t total_docs = 0;
    for (const auto& ex : batch) total_docs += ex.docs.size();
    if (total_docs == 0) throw std::invalid_argument("empty batch");
    const double inv_m = 1.0 / static_cast<double>(total_docs);

    double loss = 0;
    std::vector<double> zero(static_cast<std::size_t>(h), 0.0);
    for (const auto& ex : batch) {
        const std::size_t n = ex.docs.size();
        std::vector<std::vector<double>> u(n, std::vector<double>(static_cast<std::size_t>(d_in)));
        for (std::size_t t = 0; t < n; ++t) {
            project(P, off.proj, d_in, ex.docs[t], u[t].data());
        }
        std::vector<GruTrace> tf(n), tb(n);
        for (std::size_t t = 0; t < n; ++t) {
            const double* hprev = t == 0 ? zero.data() : tf[t - 1].h.data();
            gru_step(gf, h, d_in, u[t].data(), hprev, tf[t]);
        }
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t t = n - 1 - k;
            const double* hprev = k == 0 ? zero.data() : tb[t + 1].h.data();
            gru_step(gb, h, d_in, u[t].data(), hprev, tb[t]);
        }

        std::vector<std::vector<double>> dhf(n, std::vector<double>(static_cast<std::size_t>(h), 0.0));
        std::vector<std::vector<double>> dhb(n, std::vector<double>(static_cast<std::size_t>(h), 0.0));
        for (std::size_t t = 0; t < n; ++t) {
            double logits[3];
            for (int c = 0; c < kLabels; ++c) {
                const double* row = wo + static_cast<std::size_t>(c) * 2 * h;
                double s = bo[c];
                for (int i = 0; i < h; ++i) s += row[i] * tf[t].h[static_cast<std::size_t>(i)];
                for (int i = 0; i < h; ++i) s += row[h + i] * tb[t].h[static_cast<std::size_t>(i)];
                logits[c] = s;
            }
            int y = label_index(ex.labels[t]);
            loss -= log_softmax_at(logits, y) * inv_m;
            if (grad) {
                double p[3];
                softmax3(logits, p);
                double* gwo = grad->data() + off.out_w;
                double* gbo = grad->data() + off.out_b;
                for (int c = 0; c < kLabels; ++c) {
                    double d = (p[c] - (c == y ? 1.0 : 0.0)) * inv_m;
                    gbo[c] += d;
                    double* grow = gwo + static_cast<std::size_t>(c) * 2 * h;
                    const double* row = wo + static_cast<std::size_t>(c) * 2 * h;
                    for (int i = 0; i < h; ++i) {
                        grow[i] += d * tf[t].h[static_cast<std::size_t>(i)];
                        grow[h + i] += d * tb[t].h[static_cast<std::size_t>(i)];
                        dhf[t][static_cast<std::size_t>(i)] += row[i] * d;
                        dhb[t][static_cast<std::size_t>(i)] += row[h + i] * d;
                    }
                }
            }
        }
        if (!grad) continue;

        GruGradView ggf = grad_dir(*grad, off.fwd), ggb = grad_dir(*grad, off.bwd);
        std::vector<std::vector<double>> du(n, std::vector<double>(static_cast<std::size_t>(d_in), 0.0));
        // forward chain: last step back to first
        std::vector<double> carry(static_cast<std::size_t>(h), 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t t = n - 1 - k;
            std::vector<double> dh(static_cast<std::size_t>(h));
            for (int i = 0; i < h; ++i)
                dh[static_cast<std::size_t>(i)] = dhf[t][static_cast<std::size_t>(i)] + carry[static_cast<std::size_t>(i)];
            std::fill(carry.begin(), carry.end(), 0.0);
            const double* hprev = t == 0 ? zero.data() : tf[t - 1].h.data();
            gru_step_back(gf, ggf, h, d_in, u[t].data(), hprev, tf[t], dh.data(), carry.data(),
                          du[t].data());
        }
        // backward chain runs over the sequence reversed; unwind in time order
        std::fill(carry.begin(), carry.end(), 0.0);
        for (std::size_t t = 0; t < n; ++t) {
            std::vector<double> dh(static_cast<std::size_t>(h));
            for (int i = 0; i < h; ++i)
                dh[static_cast<std::size_t>(i)] = dhb[t][static_cast<std::size_t>(i)] + carry[static_cast<std::size_t>(i)];
            std::fill(carry.begin(), carry.end(), 0.0);
            const double* hprev = t + 1 < n ? tb[t + 1].h.data() : zero.data();
            gru_step_back(gb, ggb, h, d_in, u[t].data(), hprev, tb[t], dh.data(), carry.data(),
                          du[t].data());
        }
        for (std::size_t t = 0; t < n; ++t) {
            for (const auto& [idx, v] : ex.docs[t].entries) {
                double* block = grad->data() + off.proj + static_cast<std::size_t>(idx) * d_in;
                for (int r = 0; r < d_in; ++r) block[r] += du[t][static_cast<std::size_t>(r)] * v;
            }
        }
    }
    return loss;
}

}  // namespace

double seq_batch_loss(const SequenceLabelerModel& model,
                      std::span<const PreparedSeqExample> batch, double l2,
                      std::vector<double>* grad) {
    if (grad) grad->assign(model.params.size(), 0.0);
    double loss = model.variant == LabelerVariant::IndependentLogistic
                      ? logistic_batch_loss(model, batch, grad)
                      : birnn_batch_loss(model, batch, grad);
    double reg = 0;
    for (double p : model.params) reg += p * p;
    loss += l2 * reg;
    if (grad) {
        for (std::size_t i = 0; i < model.params.size(); ++i) (*grad)[i] += 2.0 * l2 * model.params[i];
    }
    return loss;
}

std::vector<LabelDistribution> predict_doc_probs(const SequenceLabelerModel& model,
                                                 const DocumentTimeline& timeline) {
    if (timeline.docs.empty()) throw std::invalid_argument("empty timeline");
    const std::size_t n = timeline.docs.size();
    std::vector<FeatureVector> xs;
    xs.reserve(n);
    for (const auto& doc : timeline.docs) xs.push_back(normalized(featurize(doc.joined_text(), model.features)));

    std::vector<LabelDistribution> out(n);
    if (model.variant == LabelerVariant::IndependentLogistic) {
        const std::uint32_t dim = model.features.dim;
        const double* w = model.params.data();
        const double* b = model.params.data() + static_cast<std::size_t>(kLabels) * dim;
        for (std::size_t t = 0; t < n; ++t) {
            double logits[3] = {b[0], b[1], b[2]};
            for (const auto& [idx, v] : xs[t].entries) {
                for (int c = 0; c < kLabels; ++c) logits[c] += w[static_cast<std::size_t>(c) * dim + idx] * v;
            }
            double p[3];
            softmax3(logits, p);
            out[t] = {p[0], p[1], p[2]};
        }
        return out;
    }

    const int h = model.hidden, d_in = model.d_in;
    const BiRnnOffsets off = birnn_offsets(model.features.dim, d_in, h);
    const std::vector<double>& P = model.params;
    GruParamView gf = view_dir(P, off.fwd), gb = view_dir(P, off.bwd);
    const double* wo = P.data() + off.out_w;
    const double* bo = P.data() + off.out_b;
    std::vector<double> zero(static_cast<std::size_t>(h), 0.0);
    std::vector<std::vector<double>> u(n, std::vector<double>(static_cast<std::size_t>(d_in)));
    for (std::size_t t = 0; t < n; ++t) project(P, off.proj, d_in, xs[t], u[t].data());
    std::vector<GruTrace> tf(n), tb(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double* hprev = t == 0 ? zero.data() : tf[t - 1].h.data();
        gru_step(gf, h, d_in, u[t].data(), hprev, tf[t]);
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t t = n - 1 - k;
        const double* hprev = k == 0 ? zero.data() : tb[t + 1].h.data();
        gru_step(gb, h, d_in, u[t].data(), hprev, tb[t]);
    }
    for (std::size_t t = 0; t < n; ++t) {
        double logits[3];
        for (int c = 0; c < kLabels; ++c) {
            const double* row = wo + static_cast<std::size_t>(c) * 2 * h;
            double s = bo[c];
            for (int i = 0; i < h; ++i) s += row[i] * tf[t].h[static_cast<std::size_t>(i)];
            for (int i = 0; i < h; ++i) s += row[h + i] * tb[t].h[static_cast<std::size_t>(i)];
            logits[c] = s;
        }
        double p[3];
        softmax3(logits, p);
        out[t] = {p[0], p[1], p[2]};
    }
    return out;
}

namespace {

struct DecodeKey {
    double score = 0;
    long n_pre = 0;
    long n_mid = 0;
};

// true when a is a strictly better key
bool key_better(const DecodeKey& a, const DecodeKey& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.n_pre != b.n_pre) return a.n_pre > b.n_pre;
    return a.n_mid > b.n_mid;
}

}  // namespace

std::vector<DocLabel> constrained_decode(std::span<const LabelDistribution> probs) {
    const std::size_t n = probs.size();
    if (n == 0) throw std::invalid_argument("empty probability sequence");
    auto emit = [&](std::size_t t, int s) { return std::log(probs[t][s]); };

    std::array<DecodeKey, 3> best;
    std::vector<std::array<int, 3>> parent(n);
    for (int s = 0; s < 3; ++s) {
        best[static_cast<std::size_t>(s)] = {emit(0, s), s == 0 ? 1l : 0l, s == 1 ? 1l : 0l};
        parent[0][static_cast<std::size_t>(s)] = -1;
    }
    for (std::size_t t = 1; t < n; ++t) {
        std::array<DecodeKey, 3> next;
        for (int s = 0; s < 3; ++s) {
            int arg = 0;
            DecodeKey bk = best[0];
            for (int sp = 1; sp <= s; ++sp) {
                if (key_better(best[static_cast<std::size_t>(sp)], bk)) {
                    bk = best[static_cast<std::size_t>(sp)];
                    arg = sp;
                }
            }
            bk.score += emit(t, s);
            bk.n_pre += s == 0 ? 1 : 0;
            bk.n_mid += s == 1 ? 1 : 0;
            next[static_cast<std::size_t>(s)] = bk;
            parent[t][static_cast<std::size_t>(s)] = arg;
        }
        best = next;
    }
    int s = 0;
    for (int c = 1; c < 3; ++c) {
        if (key_better(best[static_cast<std::size_t>(c)], best[static_cast<std::size_t>(s)])) s = c;
    }
    std::vector<DocLabel> labels(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t t = n - 1 - k;
        labels[t] = static_cast<DocLabel>(s);
        s = parent[t][static_cast<std::size_t>(s)];
    }
    return labels;
}

IntervalPrediction interval_from_labels(std::span<const DocLabel> labels,
                                        std::span<const DateStamp> timestamps) {
    if (labels.size() != timestamps.size()) throw std::invalid_argument("label/timestamp length mismatch");
    for (std::size_t i = 1; i < labels.size(); ++i) {
        if (static_cast<int>(labels[i]) < static_cast<int>(labels[i - 1]))
            throw std::invalid_argument("labels not monotone");
    }
    IntervalPrediction out;
    std::optional<std::size_t> first_mid, first_post;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!first_mid && labels[i] == DocLabel::Mid) first_mid = i;
        if (!first_post && labels[i] == DocLabel::Post) {
            first_post = i;
            break;
        }
    }
    if (!first_mid && !first_post) {
        out.taken = false;
        return out;
    }
    out.taken = true;
    out.start = timestamps[first_mid ? *first_mid : *first_post];
    if (first_post) out.end = timestamps[*first_post];
    return out;
}

SequenceLabelerModel train_sequence_labeler_prepared(std::span<const PreparedSeqExample> batch,
                                                     const TrainConfig& config,
                                                     LabelerVariant variant,
                                                     const FeatureConfig& features,
                                                     TimelineKind trained_on) {
    if (batch.empty()) throw std::invalid_argument("empty training set");
    if (config.learning_rate <= 0 || config.epochs <= 0)
        throw std::invalid_argument("learning rate and epochs must be positive");
    SequenceLabelerModel model = make_seq_model(variant, features, trained_on, config.seed);
    std::vector<double> grad;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        seq_batch_loss(model, batch, config.l2, &grad);
        for (std::size_t i = 0; i < model.params.size(); ++i) {
            model.params[i] -= config.learning_rate * grad[i];
        }
    }
    return model;
}

SequenceLabelerModel train_sequence_labeler(
    std::span<const std::pair<DocumentTimeline, RegimenLabel>> examples, const TrainConfig& config,
    LabelerVariant variant, const FeatureConfig& features, TimelineKind trained_on) {
    if (examples.empty()) throw std::invalid_argument("empty training set");
    std::vector<PreparedSeqExample> batch;
    batch.reserve(examples.size());
    for (const auto& [timeline, gold] : examples) {
        batch.push_back(prepare_seq_example(timeline, gold, features));
    }
    return train_sequence_labeler_prepared(batch, config, variant, features, trained_on);
}

}  // namespace tifti
