#ifndef LEVBOUND_H
#define LEVBOUND_H

/* C interface to the leveraged-return bounds library.
 *
 * Every fallible call returns an lb_status. On a negative status the
 * out-parameters are untouched and lb_last_error_message() describes the
 * failure for the calling thread. Objects returned through an out-pointer
 * are owned by the caller and released with the matching *_free function;
 * passing NULL to a *_free function is a no-op. */

#include <stddef.h>
#include <stdint.h>

#if defined(LEVBOUND_BUILDING)
#define LB_API __attribute__((visibility("default")))
#else
#define LB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lb_status {
  LB_OK = 0,
  /* Success; L == 1, where both bounds collapse to n * m1. */
  LB_UNIT_LEVERAGE = 1,
  LB_ERR_DOMAIN = -1,
  LB_ERR_DEGENERATE = -2,
  LB_ERR_GAP_REGIME = -3,
  LB_ERR_NON_FINITE = -4,
  LB_ERR_PARSE = -5,
  LB_ERR_ORDER = -6,
  LB_ERR_VALUE = -7,
  LB_ERR_TOO_SHORT = -8,
  LB_ERR_YEAR_GAP = -9,
  LB_ERR_EMPTY_SET = -10,
  LB_ERR_INVALID_ARGUMENT = -11,
  LB_ERR_IO = -12,
  LB_ERR_INTERNAL = -99
} lb_status;

LB_API const char* lb_status_name(lb_status status);
/* Message of the last failed call on this thread; "" if none. */
LB_API const char* lb_last_error_message(void);
LB_API const char* lb_version(void);

typedef struct lb_window {
  double y0;
  double y1;
} lb_window;

typedef struct lb_stats {
  size_t n;
  double m1;
  double m2;
  double s;
} lb_stats;

typedef struct lb_quad {
  double a;
  double b;
  double c;
  double anchor;
  double tangency;
} lb_quad;

typedef enum lb_regime {
  LB_REGIME_ABOVE_ONE = 0,
  LB_REGIME_FRACTION_LOW = 1,
  LB_REGIME_FRACTION_HIGH = 2,
  LB_REGIME_NEGATIVE = 3,
  LB_REGIME_UNIT = 4,
  LB_REGIME_GAP = 5
} lb_regime;

LB_API const char* lb_regime_name(lb_regime regime);

typedef struct lb_bound_result {
  double lower;
  double upper;
  double y_star_lower;
  double y_star_upper;
  lb_regime regime;
  int lower_is_linear;
  int upper_is_linear;
} lb_bound_result;

typedef enum lb_threshold_case {
  LB_CASE_I = 0,
  LB_CASE_II = 1,
  LB_CASE_UNDER_A = 2,
  LB_CASE_UNDER_B = 3
} lb_threshold_case;

/* Accepts "i", "ii", "under_a", "under_b". */
LB_API lb_status lb_parse_threshold_case(const char* name, lb_threshold_case* out);
LB_API const char* lb_threshold_case_name(lb_threshold_case which);

typedef struct lb_threshold_query {
  double leverage;
  double target;
  double expense_ratio;
  lb_window window;
  /* Mean log-return per rebalancing period. */
  double m1;
  int periods_per_year;
} lb_threshold_query;

typedef struct lb_s_threshold_result {
  /* 0 when no volatility certifies the goal; s_max is then NaN. */
  int present;
  double s_max;
  double y_star;
  double radicand;
} lb_s_threshold_result;

typedef struct lb_fraction_minimum {
  int red_present;
  double red;
  double red_leverage;
  int green_present;
  double green;
  double green_leverage;
} lb_fraction_minimum;

typedef enum lb_schedule {
  LB_SCHEDULE_DAILY = 0,
  LB_SCHEDULE_WEEKLY = 1,
  LB_SCHEDULE_MONTHLY = 2,
  LB_SCHEDULE_QUARTERLY = 3,
  LB_SCHEDULE_SEMIANNUAL = 4,
  LB_SCHEDULE_ANNUAL = 5
} lb_schedule;

LB_API lb_status lb_parse_schedule(const char* name, lb_schedule* out);
LB_API const char* lb_schedule_name(lb_schedule schedule);
LB_API int lb_schedule_periods_per_year(lb_schedule schedule);

/* Owned text, such as a CSV document. */
typedef struct lb_buffer lb_buffer;
LB_API const char* lb_buffer_data(const lb_buffer* buffer);
LB_API size_t lb_buffer_size(const lb_buffer* buffer);
LB_API void lb_buffer_free(lb_buffer* buffer);

/* Dated adjusted closes. */
typedef struct lb_prices lb_prices;
LB_API lb_status lb_prices_load_csv(const char* path, lb_prices** out);
LB_API lb_status lb_prices_parse_csv(const char* text, size_t length, lb_prices** out);
LB_API size_t lb_prices_size(const lb_prices* prices);
/* date receives "YYYY-MM-DD" and a terminating NUL. */
LB_API lb_status lb_prices_at(const lb_prices* prices, size_t index, char date[11],
                              double* close);
LB_API lb_status lb_prices_subsample(const lb_prices* prices, lb_schedule schedule,
                                     lb_prices** out);
LB_API lb_status lb_prices_to_csv(const lb_prices* prices, lb_buffer** out);
LB_API void lb_prices_free(lb_prices* prices);

/* Per-period log-returns. */
typedef struct lb_returns lb_returns;
LB_API lb_status lb_returns_from_prices(const lb_prices* prices, lb_returns** out);
LB_API lb_status lb_returns_from_array(const double* values, size_t count, lb_returns** out);
LB_API size_t lb_returns_size(const lb_returns* returns);
LB_API const double* lb_returns_data(const lb_returns* returns);
LB_API void lb_returns_free(lb_returns* returns);
LB_API lb_status lb_summarize(const lb_returns* returns, lb_stats* out);

/* Real annual log-returns from a year,P,D,J file. first_year may be NULL. */
LB_API lb_status lb_shiller_real_returns(const char* path, lb_returns** out, int* first_year);

LB_API lb_status lb_daily_leveraged_logreturn(double leverage, double y, double* out);
LB_API lb_status lb_quad_coefficients(double leverage, double anchor, double tangency,
                                      lb_quad* out);
LB_API lb_status lb_exact_logreturn(double leverage, const lb_returns* returns, double* out);
LB_API lb_status lb_net_logreturn(double gross, size_t days, double expense_ratio,
                                  double* out);

LB_API lb_status lb_classify_regime(double leverage, lb_window window, lb_regime* out);
/* LB_UNIT_LEVERAGE (with *out filled) when leverage == 1. */
LB_API lb_status lb_bound_interval(double leverage, lb_window window, const lb_stats* stats,
                                   size_t days, lb_bound_result* out);

/* upper == 0: threshold from y (= y0) below; upper != 0: from y (= y1) above. */
LB_API lb_status lb_ratio_threshold(double leverage, double target, double y, int upper,
                                    double* out);
LB_API lb_status lb_s_threshold(lb_threshold_case which, const lb_threshold_query* query,
                                lb_s_threshold_result* out);
LB_API lb_status lb_min_threshold_over_fractions(lb_window window, double m1,
                                                 int periods_per_year,
                                                 lb_fraction_minimum* out);

/* A set of named CSV panels with columns x,value,series_label. */
typedef struct lb_sweep lb_sweep;

typedef struct lb_sweep_spec {
  lb_threshold_case which;
  /* Axis of periods_per_year * m1. */
  double axis_lo;
  double axis_hi;
  size_t points;
  const double* leverages;
  size_t leverage_count;
  const double* targets;
  size_t target_count;
  const double* expenses;
  size_t expense_count;
  lb_window window;
  const lb_schedule* schedules;
  size_t schedule_count;
} lb_sweep_spec;

/* points = 0 uses the default resolution. */
LB_API lb_status lb_sweep_figure(int figure, size_t points, lb_sweep** out);
LB_API lb_status lb_sweep_custom(const lb_sweep_spec* spec, lb_sweep** out);
LB_API size_t lb_sweep_panel_count(const lb_sweep* sweep);
LB_API const char* lb_sweep_panel_name(const lb_sweep* sweep, size_t index);
LB_API lb_status lb_sweep_panel_csv(const lb_sweep* sweep, size_t index, lb_buffer** out);
LB_API void lb_sweep_free(lb_sweep* sweep);

typedef struct lb_backtest_options {
  double leverage;
  double expense_ratio;
  size_t window_days;
  const double* targets;
  size_t target_count;
  lb_window window;
} lb_backtest_options;

LB_API lb_status lb_backtest_csv(const lb_prices* prices, const lb_backtest_options* options,
                                 lb_buffer** out);

/* Randomized sandwich trials per regime plus threshold implication checks. */
typedef struct lb_verify_report lb_verify_report;
LB_API lb_status lb_verify_default(uint64_t seed, size_t trials, lb_verify_report** out);
LB_API size_t lb_verify_rows(const lb_verify_report* report);
LB_API size_t lb_verify_violations(const lb_verify_report* report);
/* Threshold queries with s_max present whose series were checked. */
LB_API size_t lb_verify_threshold_queries(const lb_verify_report* report);
LB_API size_t lb_verify_probes_above_threshold(const lb_verify_report* report);
LB_API size_t lb_verify_failures_above_threshold(const lb_verify_report* report);
LB_API lb_status lb_verify_csv(const lb_verify_report* report, lb_buffer** out);
LB_API void lb_verify_free(lb_verify_report* report);

#ifdef __cplusplus
}
#endif

#endif
