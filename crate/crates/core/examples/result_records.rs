// Writes a channel and codebook to disk, runs the `decode` command in-process
// and reads back the JSON result record it produced.

use cqseqdec::cli;
use cqseqdec::decoder::{Codebook, CqChannel};
use cqseqdec::io::{self, ResultRecord};

fn main() -> cqseqdec::Result<()> {
    let dir = std::env::temp_dir().join(format!("cqseqdec-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let channel = CqChannel::pure_qubit_pair(0.3)?;
    let codebook = Codebook::from_symbols(&["0", "1", "0", "1"], &channel)?;
    let ch = dir.join("channel.json");
    let cb = dir.join("codebook.json");
    let out = dir.join("record.json");
    io::save_channel(&ch, &channel, &[0.5, 0.5])?;
    io::save_codebook(&cb, &codebook, &channel)?;

    let args = [
        "cqseqdec".as_ref(),
        "--out".as_ref(),
        out.as_os_str(),
        "decode".as_ref(),
        "--channel".as_ref(),
        ch.as_os_str(),
        "--codebook".as_ref(),
        cb.as_os_str(),
        "--eps-prime".as_ref(),
        "0.05".as_ref(),
    ];
    let code = cli::execute(args.iter().copied().map(std::ffi::OsStr::to_os_string));
    println!("exit code {code}");

    let record = ResultRecord::load(&out)?;
    println!(
        "{} (v{}): average error {:?}",
        record.command,
        record.tool_version,
        record.real_output("average_error")
    );
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
