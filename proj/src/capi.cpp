#include "wavekit.h"

#include <cstdio>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "core/armodel.hpp"
#include "core/corrmat.hpp"
#include "core/detect.hpp"
#include "core/order.hpp"
#include "core/scenario.hpp"
#include "core/series.hpp"
#include "core/signals.hpp"
#include "core/spectrum.hpp"

using namespace wavekit;

namespace {

thread_local std::string g_last_error;

wk_status fail(wk_status code, const char* msg) {
    g_last_error = msg;
    return code;
}

template <typename Fn>
wk_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        return fail(WK_EINVAL, e.what());
    } catch (const std::bad_alloc&) {
        return fail(WK_EUNKNOWN, "out of memory");
    } catch (const std::exception& e) {
        return fail(WK_ENUMERIC, e.what());
    } catch (...) {
        return fail(WK_EUNKNOWN, "unknown error");
    }
}

NoiseSpec noise_spec_from(int kind, const double* ar_coeffs, size_t n_ar) {
    NoiseSpec spec;
    spec.kind = kind == WK_NOISE_AR ? NoiseKind::ArColored : NoiseKind::WhiteGaussian;
    if (kind == WK_NOISE_AR && ar_coeffs && n_ar > 0)
        spec.ar_coeffs.assign(ar_coeffs, ar_coeffs + n_ar);
    return spec;
}

void copy_stats(const WindowStats& ws, wk_window_stats* out) {
    out->valid = ws.valid ? 1 : 0;
    out->order = ws.p;
    out->r0 = ws.r0;
    out->r1 = ws.r1;
    out->a1 = ws.a1;
    out->sigma2_xi = ws.sigma2_xi;
    out->j_raw = ws.j_raw;
    out->j = ws.j;
    out->g = ws.g;
    out->jg = ws.jg;
    out->w00 = ws.w00;
    out->cond = ws.cond;
}

DetectorConfig to_config(const wk_detector_config* cfg) {
    DetectorConfig c;
    c.window_len = cfg->window_len;
    c.hop = cfg->hop;
    c.order = cfg->order;
    c.scan_lo = cfg->scan_lo;
    c.scan_hi = cfg->scan_hi;
    c.order_span = cfg->order_span;
    c.epsilon_frac = cfg->epsilon_frac;
    c.g_min = cfg->g_min;
    c.delta = cfg->delta;
    return c;
}

void from_config(const DetectorConfig& c, wk_detector_config* cfg) {
    cfg->window_len = c.window_len;
    cfg->hop = c.hop;
    cfg->order = c.order;
    cfg->scan_lo = c.scan_lo;
    cfg->scan_hi = c.scan_hi;
    cfg->order_span = c.order_span;
    cfg->epsilon_frac = c.epsilon_frac;
    cfg->g_min = c.g_min;
    cfg->delta = c.delta;
}

// Fits the fragment's correlation pair at the given order.
ARModel fit_model_impl(const TimeSeries& fragment, int order, bool symmetric) {
    const auto dm = build_data_matrices(fragment.view(), order);
    const auto cp = estimate_correlations(dm);
    if (!cp.invertible())
        throw std::runtime_error("correlation matrix not invertible at this order");
    return symmetric ? estimate_lp_symmetric(cp) : estimate_lp(cp);
}

}  // namespace

struct wk_series {
    TimeSeries ts;
};
struct wk_order_scan {
    OrderScan scan;
};
struct wk_trace {
    DetectionTrace trace;
};
struct wk_segments {
    SegmentSet set;
};
struct wk_model {
    ARModel model;
};
struct wk_spectrum {
    SpectrumEstimate se;
};
struct wk_spectrogram {
    Spectrogram sg;
};
struct wk_scenario {
    Scenario sc;
    wk_series record_view;
    wk_series clean_view;
};

extern "C" {

const char* wk_version(void) { return "0.1.0"; }

const char* wk_last_error(void) { return g_last_error.c_str(); }

wk_status wk_series_create(const double* samples, size_t n, wk_series** out) {
    if (!samples || !out || n == 0) return fail(WK_EINVAL, "wk_series_create: bad arguments");
    return guarded([&] {
        auto* s = new wk_series{TimeSeries(std::vector<double>(samples, samples + n))};
        *out = s;
        return WK_OK;
    });
}

void wk_series_free(wk_series* s) { delete s; }

size_t wk_series_len(const wk_series* s) { return s ? s->ts.size() : 0; }

const double* wk_series_data(const wk_series* s) {
    return s ? s->ts.samples.data() : nullptr;
}

wk_status wk_gen_packets(const wk_packet_spec* specs, size_t n_specs, size_t record_len,
                         wk_series** out) {
    if (!specs || !out || n_specs == 0) return fail(WK_EINVAL, "wk_gen_packets: bad arguments");
    return guarded([&] {
        std::vector<PacketSpec> ps(n_specs);
        for (size_t i = 0; i < n_specs; ++i) {
            ps[i].fill_freq = specs[i].fill_freq;
            ps[i].start = specs[i].start;
            ps[i].duration = specs[i].duration;
            ps[i].envelope = specs[i].envelope == WK_ENV_RECTANGULAR ? Envelope::Rectangular
                                                                     : Envelope::RaisedCosine;
            ps[i].amplitude = specs[i].amplitude;
        }
        *out = new wk_series{gen_packets(ps, record_len)};
        return WK_OK;
    });
}

wk_status wk_gen_chirp(const wk_chirp_spec* spec, size_t record_len, wk_series** out) {
    if (!spec || !out) return fail(WK_EINVAL, "wk_gen_chirp: bad arguments");
    return guarded([&] {
        ChirpSpec cs;
        cs.f_start = spec->f_start;
        cs.f_end = spec->f_end;
        cs.start = spec->start;
        cs.duration = spec->duration;
        cs.amplitude = spec->amplitude;
        cs.law = spec->law == WK_CHIRP_QUADRATIC ? ChirpLaw::Quadratic : ChirpLaw::Linear;
        *out = new wk_series{gen_chirp(cs, record_len)};
        return WK_OK;
    });
}

wk_status wk_add_noise(const wk_series* signal, double snr_db, int kind,
                       const double* ar_coeffs, size_t n_ar, uint64_t seed, wk_series** out,
                       double* measured_snr_db) {
    if (!signal || !out) return fail(WK_EINVAL, "wk_add_noise: bad arguments");
    return guarded([&] {
        auto res = add_noise(signal->ts, snr_db, noise_spec_from(kind, ar_coeffs, n_ar), seed);
        if (measured_snr_db) *measured_snr_db = res.measured_snr_db;
        *out = new wk_series{std::move(res.series)};
        return WK_OK;
    });
}

wk_status wk_gen_noise(size_t n, int kind, const double* ar_coeffs, size_t n_ar, double sigma,
                       uint64_t seed, wk_series** out) {
    if (!out) return fail(WK_EINVAL, "wk_gen_noise: bad arguments");
    return guarded([&] {
        *out = new wk_series{gen_noise(n, noise_spec_from(kind, ar_coeffs, n_ar), seed, sigma)};
        return WK_OK;
    });
}

wk_status wk_gen_kaymarple_like(uint64_t seed, wk_series** out) {
    if (!out) return fail(WK_EINVAL, "wk_gen_kaymarple_like: bad arguments");
    return guarded([&] {
        *out = new wk_series{gen_kaymarple_like(seed)};
        return WK_OK;
    });
}

wk_status wk_masked_snr_db(const wk_series* signal, const wk_series* noise, double* out_db) {
    if (!signal || !noise || !out_db) return fail(WK_EINVAL, "wk_masked_snr_db: bad arguments");
    return guarded([&] {
        *out_db = masked_snr_db(signal->ts, noise->ts);
        return WK_OK;
    });
}

wk_status wk_window_stats_compute(const wk_series* window, int order, wk_window_stats* out) {
    if (!window || !out) return fail(WK_EINVAL, "wk_window_stats_compute: bad arguments");
    return guarded([&] {
        copy_stats(window_stats(window->ts.view(), order), out);
        return WK_OK;
    });
}

wk_status wk_order_scan_run(const wk_series* window, int p_lo, int p_hi, wk_order_scan** out) {
    if (!window || !out) return fail(WK_EINVAL, "wk_order_scan_run: bad arguments");
    return guarded([&] {
        *out = new wk_order_scan{scan_orders(window->ts.view(), p_lo, p_hi)};
        return WK_OK;
    });
}

void wk_order_scan_free(wk_order_scan* scan) { delete scan; }

size_t wk_order_scan_count(const wk_order_scan* scan) {
    return scan ? scan->scan.candidates.size() : 0;
}

wk_status wk_order_scan_candidate(const wk_order_scan* scan, size_t idx, int* p,
                                  int* rho_present, double* cond, double* rho,
                                  double* singular, size_t buflen) {
    if (!scan) return fail(WK_EINVAL, "wk_order_scan_candidate: null scan");
    if (idx >= scan->scan.candidates.size())
        return fail(WK_ERANGE, "wk_order_scan_candidate: index out of range");
    const auto& cand = scan->scan.candidates[idx];
    const size_t need = static_cast<size_t>(cand.p);
    if ((rho || singular) && buflen < need)
        return fail(WK_ERANGE, "wk_order_scan_candidate: buffer too small");
    if (p) *p = cand.p;
    if (rho_present) *rho_present = cand.rho ? 1 : 0;
    if (cond) *cond = cand.cond;
    if (rho) {
        for (size_t i = 0; i < need; ++i) rho[i] = cand.rho ? (*cand.rho)(i) : 0.0;
    }
    if (singular) {
        for (size_t i = 0; i < need; ++i)
            singular[i] =
                i < static_cast<size_t>(cand.singular_values.size()) ? cand.singular_values(i) : 0.0;
    }
    return WK_OK;
}

wk_status wk_order_select(const wk_order_scan* scan, double delta, wk_order_selection* out) {
    if (!scan || !out) return fail(WK_EINVAL, "wk_order_select: bad arguments");
    return guarded([&] {
        const OrderSelection sel = select_order(scan->scan, delta > 0 ? delta : 0.05);
        out->p_opt_min = sel.p_opt_min;
        out->p_opt_max = sel.p_opt_max;
        out->p_opt = sel.p_opt;
        std::snprintf(out->rationale, sizeof(out->rationale), "%s", sel.rationale.c_str());
        return WK_OK;
    });
}

void wk_detector_config_init(wk_detector_config* cfg) {
    if (!cfg) return;
    from_config(DetectorConfig{}, cfg);
}

wk_status wk_detect_run(const wk_series* record, const wk_detector_config* cfg,
                        wk_trace** out) {
    if (!record || !cfg || !out) return fail(WK_EINVAL, "wk_detect_run: bad arguments");
    return guarded([&] {
        *out = new wk_trace{run_detector(record->ts, to_config(cfg))};
        return WK_OK;
    });
}

void wk_trace_free(wk_trace* trace) { delete trace; }

size_t wk_trace_count(const wk_trace* trace) { return trace ? trace->trace.size() : 0; }

int wk_trace_global_order(const wk_trace* trace) {
    return trace ? trace->trace.global_order : 0;
}

wk_status wk_trace_row(const wk_trace* trace, size_t idx, size_t* center,
                       wk_window_stats* stats) {
    if (!trace) return fail(WK_EINVAL, "wk_trace_row: null trace");
    if (idx >= trace->trace.size()) return fail(WK_ERANGE, "wk_trace_row: index out of range");
    if (center) *center = trace->trace.centers[idx];
    if (stats) copy_stats(trace->trace.stats[idx], stats);
    return WK_OK;
}

wk_status wk_segment_trace(const wk_trace* trace, const wk_detector_config* cfg,
                           wk_segments** out) {
    if (!trace || !cfg || !out) return fail(WK_EINVAL, "wk_segment_trace: bad arguments");
    return guarded([&] {
        *out = new wk_segments{segment(trace->trace, to_config(cfg))};
        return WK_OK;
    });
}

void wk_segments_free(wk_segments* segs) { delete segs; }

size_t wk_segments_count(const wk_segments* segs) {
    return segs ? segs->set.segments.size() : 0;
}

double wk_segments_threshold(const wk_segments* segs) {
    return segs ? segs->set.threshold : 0.0;
}

wk_status wk_segments_get(const wk_segments* segs, size_t idx, size_t* start, size_t* end,
                          double* peak_jg) {
    if (!segs) return fail(WK_EINVAL, "wk_segments_get: null handle");
    if (idx >= segs->set.segments.size())
        return fail(WK_ERANGE, "wk_segments_get: index out of range");
    const auto& s = segs->set.segments[idx];
    if (start) *start = s.start;
    if (end) *end = s.end;
    if (peak_jg) *peak_jg = s.peak_jg;
    return WK_OK;
}

wk_status wk_fit_model(const wk_series* fragment, int order, int symmetric, wk_model** out) {
    if (!fragment || !out) return fail(WK_EINVAL, "wk_fit_model: bad arguments");
    return guarded([&] {
        *out = new wk_model{fit_model_impl(fragment->ts, order, symmetric != 0)};
        return WK_OK;
    });
}

void wk_model_free(wk_model* m) { delete m; }

int wk_model_order(const wk_model* m) { return m ? m->model.p : 0; }

double wk_model_sigma2(const wk_model* m) { return m ? m->model.sigma2_xi : 0.0; }

int wk_model_valid(const wk_model* m) { return m && m->model.valid ? 1 : 0; }

wk_status wk_model_coeffs(const wk_model* m, double* buf, size_t buflen) {
    if (!m || !buf) return fail(WK_EINVAL, "wk_model_coeffs: bad arguments");
    const size_t p = static_cast<size_t>(m->model.p);
    if (buflen < p) return fail(WK_ERANGE, "wk_model_coeffs: buffer too small");
    for (size_t i = 0; i < p; ++i) buf[i] = m->model.a(static_cast<Eigen::Index>(i));
    return WK_OK;
}

wk_status wk_model_roots(const wk_model* m, double* re, double* im, size_t buflen) {
    if (!m || !re || !im) return fail(WK_EINVAL, "wk_model_roots: bad arguments");
    const size_t p = static_cast<size_t>(m->model.p);
    if (buflen < p) return fail(WK_ERANGE, "wk_model_roots: buffer too small");
    return guarded([&] {
        const auto roots = char_roots(m->model);
        for (size_t i = 0; i < p; ++i) {
            re[i] = roots[i].real();
            im[i] = roots[i].imag();
        }
        return WK_OK;
    });
}

wk_status wk_spectrum_estimate(const wk_series* fragment, int order, int symmetric,
                               size_t grid, wk_spectrum** out) {
    if (!fragment || !out) return fail(WK_EINVAL, "wk_spectrum_estimate: bad arguments");
    return guarded([&] {
        const ARModel model = fit_model_impl(fragment->ts, order, symmetric != 0);
        const FormingFilter ff = build_forming_filter(fragment->ts.view(), model);
        *out = new wk_spectrum{amplitude_spectrum(ff, grid)};
        return WK_OK;
    });
}

void wk_spectrum_free(wk_spectrum* sp) { delete sp; }

size_t wk_spectrum_size(const wk_spectrum* sp) {
    return sp ? static_cast<size_t>(sp->se.freqs.size()) : 0;
}

double wk_spectrum_residual(const wk_spectrum* sp) { return sp ? sp->se.residual : 0.0; }

wk_status wk_spectrum_get(const wk_spectrum* sp, size_t idx, double* freq,
                          double* amplitude) {
    if (!sp) return fail(WK_EINVAL, "wk_spectrum_get: null handle");
    if (idx >= static_cast<size_t>(sp->se.freqs.size()))
        return fail(WK_ERANGE, "wk_spectrum_get: index out of range");
    if (freq) *freq = sp->se.freqs(static_cast<Eigen::Index>(idx));
    if (amplitude) *amplitude = sp->se.amplitude(static_cast<Eigen::Index>(idx));
    return WK_OK;
}

wk_status wk_localized_analysis(const wk_series* record, const wk_segments* segs, int order,
                                int symmetric, size_t grid, wk_spectrum*** out_list,
                                size_t* out_count) {
    if (!record || !segs || !out_list || !out_count)
        return fail(WK_EINVAL, "wk_localized_analysis: bad arguments");
    return guarded([&] {
        auto spectra = localized_analysis(record->ts, segs->set, order, symmetric != 0, grid);
        auto** list = new wk_spectrum*[spectra.size()];
        for (size_t i = 0; i < spectra.size(); ++i)
            list[i] = new wk_spectrum{std::move(spectra[i])};
        *out_list = list;
        *out_count = spectra.size();
        return WK_OK;
    });
}

void wk_spectrum_list_free(wk_spectrum** list, size_t count) {
    if (!list) return;
    for (size_t i = 0; i < count; ++i) delete list[i];
    delete[] list;
}

wk_status wk_track_peaks(const wk_series* record, const wk_detector_config* cfg, int order,
                         int symmetric, size_t grid, double peak_frac, wk_spectrogram** out) {
    if (!record || !cfg || !out) return fail(WK_EINVAL, "wk_track_peaks: bad arguments");
    return guarded([&] {
        *out = new wk_spectrogram{
            track_peaks(record->ts, to_config(cfg), order, symmetric != 0, grid, peak_frac)};
        return WK_OK;
    });
}

void wk_spectrogram_free(wk_spectrogram* sg) { delete sg; }

size_t wk_spectrogram_count(const wk_spectrogram* sg) {
    return sg ? sg->sg.centers.size() : 0;
}

wk_status wk_spectrogram_row(const wk_spectrogram* sg, size_t idx, size_t* center,
                             size_t* n_peaks) {
    if (!sg) return fail(WK_EINVAL, "wk_spectrogram_row: null handle");
    if (idx >= sg->sg.centers.size())
        return fail(WK_ERANGE, "wk_spectrogram_row: index out of range");
    if (center) *center = sg->sg.centers[idx];
    if (n_peaks) *n_peaks = sg->sg.peaks[idx].size();
    return WK_OK;
}

wk_status wk_spectrogram_peak(const wk_spectrogram* sg, size_t idx, size_t peak,
                              double* freq, double* amplitude) {
    if (!sg) return fail(WK_EINVAL, "wk_spectrogram_peak: null handle");
    if (idx >= sg->sg.centers.size() || peak >= sg->sg.peaks[idx].size())
        return fail(WK_ERANGE, "wk_spectrogram_peak: index out of range");
    if (freq) *freq = sg->sg.peaks[idx][peak].freq;
    if (amplitude) *amplitude = sg->sg.peaks[idx][peak].amplitude;
    return WK_OK;
}

wk_status wk_scenario_create(const char* name, double snr_db, uint64_t seed,
                             wk_scenario** out) {
    if (!name || !out) return fail(WK_EINVAL, "wk_scenario_create: bad arguments");
    return guarded([&] {
        auto* sc = new wk_scenario;
        sc->sc = build_scenario(name, snr_db, seed);
        sc->record_view.ts = sc->sc.record;
        sc->clean_view.ts = sc->sc.clean;
        *out = sc;
        return WK_OK;
    });
}

void wk_scenario_free(wk_scenario* sc) { delete sc; }

const wk_series* wk_scenario_record(const wk_scenario* sc) {
    return sc ? &sc->record_view : nullptr;
}

const wk_series* wk_scenario_clean(const wk_scenario* sc) {
    return sc ? &sc->clean_view : nullptr;
}

double wk_scenario_measured_snr_db(const wk_scenario* sc) {
    return sc ? sc->sc.measured_snr_db : 0.0;
}

void wk_scenario_detector_config(const wk_scenario* sc, wk_detector_config* cfg) {
    if (!sc || !cfg) return;
    from_config(sc->sc.detector, cfg);
}

int wk_scenario_spectrum_order(const wk_scenario* sc) {
    return sc ? sc->sc.spectrum_order : 0;
}

int wk_scenario_symmetric(const wk_scenario* sc) {
    return sc && sc->sc.symmetric ? 1 : 0;
}

size_t wk_scenario_grid(const wk_scenario* sc) { return sc ? sc->sc.grid : 0; }

size_t wk_scenario_truth_count(const wk_scenario* sc) {
    return sc ? sc->sc.truth.size() : 0;
}

wk_status wk_scenario_truth(const wk_scenario* sc, size_t idx, int* is_chirp, size_t* start,
                            size_t* end, double* f0, double* f1) {
    if (!sc) return fail(WK_EINVAL, "wk_scenario_truth: null handle");
    if (idx >= sc->sc.truth.size())
        return fail(WK_ERANGE, "wk_scenario_truth: index out of range");
    const auto& t = sc->sc.truth[idx];
    if (is_chirp) *is_chirp = t.is_chirp ? 1 : 0;
    if (start) *start = t.start;
    if (end) *end = t.end;
    if (f0) *f0 = t.f0;
    if (f1) *f1 = t.f1;
    return WK_OK;
}

}  // extern "C"
