#include <chrono>

#include <httplib.h>
#include <json.hpp>

#include "rcgen/bootstrap.hpp"
#include "rcgen/errors.hpp"

namespace rcgen {

using nlohmann::json;

namespace {

struct EndpointParts {
    std::string base;  // scheme://host:port
    std::string path;  // /v1/complete
};

EndpointParts split_endpoint(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw ConfigError("endpoint must be a full URL, got: " + url);
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

struct HttpModelClient::Impl {
    httplib::Client client;
    std::string path;
    httplib::Headers headers;

    Impl(const EndpointParts& parts, double timeout_s, const std::string& token)
        : client(parts.base), path(parts.path) {
        auto timeout = std::chrono::milliseconds(static_cast<int64_t>(timeout_s * 1000));
        client.set_connection_timeout(timeout);
        client.set_read_timeout(timeout);
        client.set_write_timeout(timeout);
        if (!token.empty()) headers.emplace("Authorization", "Bearer " + token);
    }
};

HttpModelClient::HttpModelClient(const TemplateBank& bank, const std::string& endpoint_url,
                                 double timeout_s, std::string auth_token)
    : PromptModelClient(bank),
      impl_(std::make_unique<Impl>(split_endpoint(endpoint_url), timeout_s, auth_token)) {}

HttpModelClient::~HttpModelClient() = default;

std::string HttpModelClient::complete(const ImageRecord& image, const std::string& prompt) {
    json body{{"image_uri", image.uri.empty() ? image.image_id : image.uri}, {"prompt", prompt}};
    auto res = impl_->client.Post(impl_->path, impl_->headers, body.dump(), "application/json");
    if (!res) throw ClientError("model request failed: " + httplib::to_string(res.error()));
    if (res->status != 200)
        throw ClientError("model request returned status " + std::to_string(res->status));
    try {
        json reply = json::parse(res->body);
        return reply.at("text").get<std::string>();
    } catch (const json::exception& ex) {
        throw ClientError(std::string("model reply is not {\"text\": ...}: ") + ex.what());
    }
}

}  // namespace rcgen
