import { init } from "echarts";
import type { EChartsOption } from "echarts";

/** Server-side render to an SVG string; no DOM, no animation. */
export function renderSvg(option: EChartsOption, width = 900, height = 600): string {
  const chart = init(null, null, { renderer: "svg", ssr: true, width, height });
  try {
    chart.setOption({ animation: false, ...option });
    return chart.renderToSVGString();
  } finally {
    chart.dispose();
  }
}
