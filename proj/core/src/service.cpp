#include "tamyiz/service.hpp"

#include <atomic>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace tamyiz {
namespace {

using nlohmann::json;

json error_body(const std::string& message) {
    return json{{"error", message}};
}

}  // namespace

PredictResponse predict_response(const GenderModel& model, std::string_view name) {
    const Prediction p = model.predict_name(name);
    PredictResponse r;
    r.gender = p.label == GenderLabel::Male ? "male" : "female";
    // Uncalibrated models have no meaningful confidence; fold to barely
    // above chance so callers can tell the difference.
    r.probability = model.calibration.fitted ? p.confidence() : 0.5 + 1e-6;
    r.model_version = model.version();
    return r;
}

struct PredictionService::Impl {
    explicit Impl(GenderModel m) : model(std::move(m)), version(model.version()) {}

    const GenderModel model;
    const std::string version;
    httplib::Server server;
    std::thread thread;
    std::atomic<int> bound_port{0};

    void wire_routes() {
        server.set_payload_max_length(kMaxRequestBody);

        server.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
            res.set_content(json{{"status", "ok"}, {"model_version", version}}.dump(),
                            "application/json");
        });

        server.Post("/predict", [this](const httplib::Request& req, httplib::Response& res) {
            json body = json::parse(req.body, nullptr, false);
            if (body.is_discarded() || !body.is_object()) {
                res.status = 400;
                res.set_content(error_body("body must be a JSON object").dump(),
                                "application/json");
                return;
            }
            auto it = body.find("name");
            if (it == body.end() || !it->is_string()) {
                res.status = 400;
                res.set_content(error_body("field 'name' (string) is required").dump(),
                                "application/json");
                return;
            }
            const std::string name = it->get<std::string>();
            if (name.empty()) {
                res.status = 400;
                res.set_content(error_body("field 'name' must be non-empty").dump(),
                                "application/json");
                return;
            }
            const PredictResponse out = predict_response(model, name);
            res.set_content(json{{"gender", out.gender},
                                 {"probability", out.probability},
                                 {"model_version", out.model_version}}
                                .dump(),
                            "application/json");
        });
    }

    bool bind(const std::string& host, int port, std::string* error) {
        wire_routes();
        if (port == 0) {
            int p = server.bind_to_any_port(host);
            if (p <= 0) {
                if (error) *error = "failed to bind " + host + " on any port";
                return false;
            }
            bound_port = p;
            return true;
        }
        if (!server.bind_to_port(host, port)) {
            if (error) *error = "failed to bind " + host + ":" + std::to_string(port) +
                                " (port in use?)";
            return false;
        }
        bound_port = port;
        return true;
    }
};

PredictionService::PredictionService(GenderModel model)
    : impl_(std::make_unique<Impl>(std::move(model))) {}

PredictionService::~PredictionService() {
    stop();
}

bool PredictionService::start(const std::string& host, int port, std::string* error) {
    if (!impl_->bind(host, port, error)) return false;
    impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return true;
}

bool PredictionService::run(const std::string& host, int port, std::string* error) {
    if (!impl_->bind(host, port, error)) return false;
    return impl_->server.listen_after_bind();
}

void PredictionService::stop() {
    if (impl_ && impl_->server.is_running()) {
        impl_->server.stop();
    }
    if (impl_ && impl_->thread.joinable()) {
        impl_->thread.join();
    }
}

int PredictionService::port() const {
    return impl_->bound_port;
}

}  // namespace tamyiz
