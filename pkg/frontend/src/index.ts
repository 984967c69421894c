export {
  CSV_COLUMNS,
  ContractError,
  isSimulated,
  parseSweepCsv,
  readSweepCsv,
} from "./csv.js";
export type { CsvColumn, SweepRow } from "./csv.js";
export {
  FIGURE_KINDS,
  FigureError,
  GROUP_KEYS,
  buildFigureOption,
  groupRows,
  renderFigure,
} from "./figure.js";
export type { FigureKind, FigureSpec, GroupKey, YScale } from "./figure.js";
export { renderSvg } from "./render.js";
