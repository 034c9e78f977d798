//! Minimal write-only SVG plotting for the four figures.

use std::fmt::Write as _;

use num_complex::Complex64;

pub struct Plot {
    width: f64,
    height: f64,
    x_range: (f64, f64),
    y_range: (f64, f64),
    title: String,
    body: String,
}

const MARGIN: f64 = 40.0;

impl Plot {
    pub fn new(title: &str, mut x_range: (f64, f64), y_range: (f64, f64)) -> Self {
        // keep the data aspect ratio, 600px on the long side, but widen tall
        // plots so the notes underneath still fit
        let dy = y_range.1 - y_range.0;
        let mut dx = x_range.1 - x_range.0;
        if dx < 0.6 * dy {
            let grow = 0.5 * (0.6 * dy - dx);
            x_range = (x_range.0 - grow, x_range.1 + grow);
            dx = 0.6 * dy;
        }
        let scale = 600.0 / dx.max(dy);
        Self {
            width: dx * scale + 2.0 * MARGIN,
            height: dy * scale + 2.0 * MARGIN,
            x_range,
            y_range,
            title: title.to_owned(),
            body: String::new(),
        }
    }

    fn px(&self, p: Complex64) -> (f64, f64) {
        let (x0, x1) = self.x_range;
        let (y0, y1) = self.y_range;
        let w = self.width - 2.0 * MARGIN;
        let h = self.height - 2.0 * MARGIN;
        (
            MARGIN + (p.re - x0) / (x1 - x0) * w,
            MARGIN + (y1 - p.im) / (y1 - y0) * h,
        )
    }

    pub fn axes(&mut self) {
        let (x0, x1) = self.x_range;
        let (y0, y1) = self.y_range;
        if y0 <= 0.0 && y1 >= 0.0 {
            self.polyline(
                &[Complex64::new(x0, 0.0), Complex64::new(x1, 0.0)],
                "axis",
                "#999",
            );
        }
        if x0 <= 0.0 && x1 >= 0.0 {
            self.polyline(
                &[Complex64::new(0.0, y0), Complex64::new(0.0, y1)],
                "axis",
                "#999",
            );
        }
    }

    pub fn polyline(&mut self, pts: &[Complex64], class: &str, color: &str) {
        let coords: Vec<String> = pts
            .iter()
            .map(|&p| {
                let (x, y) = self.px(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            self.body,
            r#"<polyline class="{class}" fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            coords.join(" ")
        );
    }

    /// A labeled point marker; exact coordinates go into data attributes.
    pub fn marker(&mut self, p: Complex64, class: &str, color: &str, label: &str) {
        let (x, y) = self.px(p);
        let _ = writeln!(
            self.body,
            r#"<circle class="{class}" cx="{x:.3}" cy="{y:.3}" r="3.5" fill="{color}" data-re="{:.16e}" data-im="{:.16e}"/>"#,
            p.re, p.im
        );
        if !label.is_empty() {
            let _ = writeln!(
                self.body,
                r#"<text x="{:.3}" y="{:.3}" font-size="11" fill="{color}">{}</text>"#,
                x + 6.0,
                y - 6.0,
                escape(label)
            );
        }
    }

    pub fn note(&mut self, text: &str) {
        let y = self.height - 12.0;
        let _ = writeln!(
            self.body,
            r#"<text class="note" x="{MARGIN}" y="{y:.3}" font-size="12">{}</text>"#,
            escape(text)
        );
    }

    pub fn render(&self) -> String {
        format!(
            concat!(
                r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#,
                "\n<title>{title}</title>\n",
                r#"<rect width="100%" height="100%" fill="white"/>"#,
                "\n<text x=\"{m}\" y=\"24\" font-size=\"14\">{title}</text>\n{body}</svg>\n"
            ),
            w = self.width,
            h = self.height,
            m = MARGIN,
            title = escape(&self.title),
            body = self.body
        )
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
