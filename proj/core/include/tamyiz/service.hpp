// Minimal HTTP prediction endpoint.
//
//   POST /predict  {"name": "..."}  ->  {"gender","probability","model_version"}
//   GET  /health                    ->  {"status","model_version"}
//
// The model is loaded once and shared read-only across request threads.
// Malformed bodies get 400; bodies over 8 KiB get 413.
#pragma once

#include <memory>
#include <string>

#include "tamyiz/classifier.hpp"

namespace tamyiz {

struct PredictResponse {
    std::string gender;       // "male" | "female"
    double probability = 0.5; // confidence of the returned label, >= 0.5
    std::string model_version;
};

// Shared by the HTTP handler and the CLI `predict` subcommand so the two
// surfaces cannot drift apart.
PredictResponse predict_response(const GenderModel& model, std::string_view name);

inline constexpr std::size_t kMaxRequestBody = 8 * 1024;

class PredictionService {
public:
    explicit PredictionService(GenderModel model);
    ~PredictionService();
    PredictionService(const PredictionService&) = delete;
    PredictionService& operator=(const PredictionService&) = delete;

    // Binds and serves on a background thread. port 0 picks a free port.
    // Returns false (with a message in *error) when the bind fails, e.g.
    // the port is already in use.
    bool start(const std::string& host, int port, std::string* error = nullptr);
    // Serves on the calling thread until stop() is called from elsewhere.
    bool run(const std::string& host, int port, std::string* error = nullptr);
    void stop();

    int port() const;  // bound port, valid after a successful start

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace tamyiz
