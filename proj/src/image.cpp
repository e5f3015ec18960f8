#include "prid/image.hpp"

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "prid/errors.hpp"

namespace prid {

PersonImage load_image(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) {
        throw IoError("image file not found: " + path.string());
    }
    cv::Mat raw = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
    if (raw.empty()) {
        throw DataError("undecodable image: " + path.string());
    }
    if (raw.cols < 1 || raw.rows < 1) {
        throw DataError("zero-dimension image: " + path.string());
    }
    cv::Mat bgr;
    switch (raw.channels()) {
        case 1:
            cv::cvtColor(raw, bgr, cv::COLOR_GRAY2BGR);
            break;
        case 3:
            bgr = raw;
            break;
        case 4:
            cv::cvtColor(raw, bgr, cv::COLOR_BGRA2BGR);
            break;
        default:
            throw DataError("unsupported channel count in " + path.string());
    }
    if (bgr.depth() != CV_8U) {
        throw DataError("unsupported bit depth in " + path.string());
    }

    PersonImage img;
    img.width = bgr.cols;
    img.height = bgr.rows;
    img.pixels.resize(static_cast<std::size_t>(img.width) * img.height * 3);
    for (int y = 0; y < img.height; ++y) {
        const auto* row = bgr.ptr<cv::Vec3b>(y);
        for (int x = 0; x < img.width; ++x) {
            std::size_t off = (static_cast<std::size_t>(y) * img.width + x) * 3;
            img.pixels[off + 0] = row[x][2];
            img.pixels[off + 1] = row[x][1];
            img.pixels[off + 2] = row[x][0];
        }
    }
    return img;
}

void save_png(const PersonImage& image, const std::filesystem::path& path) {
    cv::Mat bgr(image.height, image.width, CV_8UC3);
    for (int y = 0; y < image.height; ++y) {
        auto* row = bgr.ptr<cv::Vec3b>(y);
        for (int x = 0; x < image.width; ++x) {
            std::size_t off = (static_cast<std::size_t>(y) * image.width + x) * 3;
            row[x] = {image.pixels[off + 2], image.pixels[off + 1], image.pixels[off + 0]};
        }
    }
    if (!cv::imwrite(path.string(), bgr)) {
        throw IoError("cannot write PNG: " + path.string());
    }
}

}  // namespace prid
