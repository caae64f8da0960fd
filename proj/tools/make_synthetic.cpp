// Writes a deterministic synthetic skin dataset (images, masks, manifest.csv).

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "skindet/synth.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Generate a synthetic labeled skin dataset"};
    skindet::SynthOptions o;
    std::string out;
    std::string profile{"realistic"};
    app.add_option("out", out, "Output directory")->required();
    app.add_option("--images", o.images)->capture_default_str();
    app.add_option("--width", o.width)->capture_default_str();
    app.add_option("--height", o.height)->capture_default_str();
    app.add_option("--train", o.train, "Images assigned to the train split")->capture_default_str();
    app.add_option("--seed", o.seed)->capture_default_str();
    app.add_option("--profile", profile, "clean | realistic")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    if (profile == "clean") {
        o.profile = skindet::SynthProfile::clean;
    } else if (profile == "realistic") {
        o.profile = skindet::SynthProfile::realistic;
    } else {
        std::cerr << "error: --profile must be clean or realistic\n";
        return 2;
    }
    try {
        const auto images = skindet::generate_dataset(o);
        const auto manifest = skindet::write_dataset(images, out);
        const auto c = manifest.counts();
        std::cout << "wrote " << c.entries << " images (" << c.train << " train, " << c.test << " test; "
                  << c.all_skin << " all-skin, " << c.no_skin << " no-skin, " << c.mask_backed << " mask) to "
                  << out << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
