/* wavekit: location and high-order AR spectral estimation of weak wave
 * packets and chirps in noise.
 *
 * Conventions: frequencies are relative (cycles/sample) on [0, 0.5]; sample
 * indices are 0-based; segment intervals are half-open [start, end). All
 * functions return WK_OK on success; on failure wk_last_error() carries a
 * thread-local message. Handles are freed with their matching *_free call.
 */
#ifndef WAVEKIT_H
#define WAVEKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define WK_API __declspec(dllexport)
#else
#define WK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wk_status {
    WK_OK = 0,
    WK_EINVAL = 1,   /* invalid argument / precondition violated */
    WK_ENUMERIC = 2, /* numerical failure */
    WK_ERANGE = 3,   /* index out of range */
    WK_EUNKNOWN = 4
} wk_status;

WK_API const char* wk_version(void);
WK_API const char* wk_last_error(void);

/* ---------------- time series ---------------- */

typedef struct wk_series wk_series;

WK_API wk_status wk_series_create(const double* samples, size_t n, wk_series** out);
WK_API void wk_series_free(wk_series* s);
WK_API size_t wk_series_len(const wk_series* s);
WK_API const double* wk_series_data(const wk_series* s);

/* ---------------- generators ---------------- */

typedef enum wk_envelope { WK_ENV_RECTANGULAR = 0, WK_ENV_RAISED_COSINE = 1 } wk_envelope;

typedef struct wk_packet_spec {
    double fill_freq; /* cycles/sample in (0, 0.5) */
    size_t start;
    size_t duration;
    int envelope; /* wk_envelope */
    double amplitude;
} wk_packet_spec;

typedef enum wk_chirp_law { WK_CHIRP_LINEAR = 0, WK_CHIRP_QUADRATIC = 1 } wk_chirp_law;

typedef struct wk_chirp_spec {
    double f_start;
    double f_end;
    size_t start;
    size_t duration;
    double amplitude;
    int law; /* wk_chirp_law */
} wk_chirp_spec;

typedef enum wk_noise_kind { WK_NOISE_WHITE = 0, WK_NOISE_AR = 1 } wk_noise_kind;

WK_API wk_status wk_gen_packets(const wk_packet_spec* specs, size_t n_specs,
                                size_t record_len, wk_series** out);
WK_API wk_status wk_gen_chirp(const wk_chirp_spec* spec, size_t record_len, wk_series** out);

/* ar_coeffs/n_ar describe the coloring filter when kind == WK_NOISE_AR; pass
 * NULL/0 for the default AR(1) 0.8. snr_db uses the masked convention (power
 * ratio over samples where the signal envelope exceeds 0.1 of its maximum);
 * the achieved value is written to measured_snr_db when non-NULL. */
WK_API wk_status wk_add_noise(const wk_series* signal, double snr_db, int kind,
                              const double* ar_coeffs, size_t n_ar, uint64_t seed,
                              wk_series** out, double* measured_snr_db);
WK_API wk_status wk_gen_noise(size_t n, int kind, const double* ar_coeffs, size_t n_ar,
                              double sigma, uint64_t seed, wk_series** out);
WK_API wk_status wk_gen_kaymarple_like(uint64_t seed, wk_series** out);
WK_API wk_status wk_masked_snr_db(const wk_series* signal, const wk_series* noise,
                                  double* out_db);

/* ---------------- AR window analysis ---------------- */

typedef struct wk_window_stats {
    int valid; /* 0: model absent for this window, numeric fields undefined */
    int order;
    double r0, r1, a1;
    double sigma2_xi;
    double j_raw, j, g, jg;
    double w00;
    double cond;
} wk_window_stats;

WK_API wk_status wk_window_stats_compute(const wk_series* window, int order,
                                         wk_window_stats* out);

/* ---------------- model order selection ---------------- */

typedef struct wk_order_scan wk_order_scan;

WK_API wk_status wk_order_scan_run(const wk_series* window, int p_lo, int p_hi,
                                   wk_order_scan** out);
WK_API void wk_order_scan_free(wk_order_scan* scan);
WK_API size_t wk_order_scan_count(const wk_order_scan* scan);
/* rho_present reports whether the inverse-correlation column exists for the
 * candidate. rho/singular buffers receive p values when non-NULL (buflen >= p). */
WK_API wk_status wk_order_scan_candidate(const wk_order_scan* scan, size_t idx, int* p,
                                         int* rho_present, double* cond, double* rho,
                                         double* singular, size_t buflen);

typedef struct wk_order_selection {
    int p_opt_min;
    int p_opt_max;
    int p_opt;
    char rationale[160];
} wk_order_selection;

WK_API wk_status wk_order_select(const wk_order_scan* scan, double delta,
                                 wk_order_selection* out);

/* ---------------- detection ---------------- */

typedef struct wk_detector_config {
    size_t window_len;
    size_t hop;
    int order;   /* > 0 fixed, 0 two-stage auto */
    int scan_lo; /* whole-record scan range for auto order */
    int scan_hi;
    int order_span;
    double epsilon_frac;
    double g_min;
    double delta;
} wk_detector_config;

WK_API void wk_detector_config_init(wk_detector_config* cfg);

typedef struct wk_trace wk_trace;

WK_API wk_status wk_detect_run(const wk_series* record, const wk_detector_config* cfg,
                               wk_trace** out);
WK_API void wk_trace_free(wk_trace* trace);
WK_API size_t wk_trace_count(const wk_trace* trace);
WK_API int wk_trace_global_order(const wk_trace* trace);
WK_API wk_status wk_trace_row(const wk_trace* trace, size_t idx, size_t* center,
                              wk_window_stats* stats);

typedef struct wk_segments wk_segments;

WK_API wk_status wk_segment_trace(const wk_trace* trace, const wk_detector_config* cfg,
                                  wk_segments** out);
WK_API void wk_segments_free(wk_segments* segs);
WK_API size_t wk_segments_count(const wk_segments* segs);
WK_API double wk_segments_threshold(const wk_segments* segs);
WK_API wk_status wk_segments_get(const wk_segments* segs, size_t idx, size_t* start,
                                 size_t* end, double* peak_jg);

/* ---------------- models and spectra ---------------- */

typedef struct wk_model wk_model;

WK_API wk_status wk_fit_model(const wk_series* fragment, int order, int symmetric,
                              wk_model** out);
WK_API void wk_model_free(wk_model* m);
WK_API int wk_model_order(const wk_model* m);
WK_API double wk_model_sigma2(const wk_model* m);
WK_API int wk_model_valid(const wk_model* m);
WK_API wk_status wk_model_coeffs(const wk_model* m, double* buf, size_t buflen);
WK_API wk_status wk_model_roots(const wk_model* m, double* re, double* im, size_t buflen);

typedef struct wk_spectrum wk_spectrum;

WK_API wk_status wk_spectrum_estimate(const wk_series* fragment, int order, int symmetric,
                                      size_t grid, wk_spectrum** out);
WK_API void wk_spectrum_free(wk_spectrum* sp);
WK_API size_t wk_spectrum_size(const wk_spectrum* sp);
WK_API double wk_spectrum_residual(const wk_spectrum* sp);
WK_API wk_status wk_spectrum_get(const wk_spectrum* sp, size_t idx, double* freq,
                                 double* amplitude);

/* Per-segment spectra; segments shorter than 2*order are skipped. The output
 * array is allocated by the library and released with wk_spectrum_list_free. */
WK_API wk_status wk_localized_analysis(const wk_series* record, const wk_segments* segs,
                                       int order, int symmetric, size_t grid,
                                       wk_spectrum*** out_list, size_t* out_count);
WK_API void wk_spectrum_list_free(wk_spectrum** list, size_t count);

/* ---------------- peak tracking ---------------- */

typedef struct wk_spectrogram wk_spectrogram;

WK_API wk_status wk_track_peaks(const wk_series* record, const wk_detector_config* cfg,
                                int order, int symmetric, size_t grid, double peak_frac,
                                wk_spectrogram** out);
WK_API void wk_spectrogram_free(wk_spectrogram* sg);
WK_API size_t wk_spectrogram_count(const wk_spectrogram* sg);
WK_API wk_status wk_spectrogram_row(const wk_spectrogram* sg, size_t idx, size_t* center,
                                    size_t* n_peaks);
WK_API wk_status wk_spectrogram_peak(const wk_spectrogram* sg, size_t idx, size_t peak,
                                     double* freq, double* amplitude);

/* ---------------- scenarios ---------------- */

/* Reproducible named setups (fig3 fig4 fig5 fig6 fig7 fig8 km minwin48
 * minwin32) carrying the generated record, ground truth and the analysis
 * parameters that go with it. Pass NaN for snr_db to keep the default. */
typedef struct wk_scenario wk_scenario;

WK_API wk_status wk_scenario_create(const char* name, double snr_db, uint64_t seed,
                                    wk_scenario** out);
WK_API void wk_scenario_free(wk_scenario* sc);
WK_API const wk_series* wk_scenario_record(const wk_scenario* sc);
WK_API const wk_series* wk_scenario_clean(const wk_scenario* sc);
WK_API double wk_scenario_measured_snr_db(const wk_scenario* sc);
WK_API void wk_scenario_detector_config(const wk_scenario* sc, wk_detector_config* cfg);
WK_API int wk_scenario_spectrum_order(const wk_scenario* sc);
WK_API int wk_scenario_symmetric(const wk_scenario* sc);
WK_API size_t wk_scenario_grid(const wk_scenario* sc);
WK_API size_t wk_scenario_truth_count(const wk_scenario* sc);
WK_API wk_status wk_scenario_truth(const wk_scenario* sc, size_t idx, int* is_chirp,
                                   size_t* start, size_t* end, double* f0, double* f1);

#ifdef __cplusplus
}
#endif

#endif /* WAVEKIT_H */
