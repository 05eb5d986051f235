#
# Class to plot aspects of a training run (helper class)
#
import os

import pandas as pd
from plotnine import ggplot, aes, geom_line, ggtitle, labs


class Plotter:
    """A static class for plotting
    """

    @staticmethod
    def plot_traces(df: pd.DataFrame, title: str, directory: str = ".") -> str:
        """Creates a plot of the weight traces, coloured by element key.

        Parameters
        ----------
        df : pd.DataFrame
            Weight history: an `epoch` column and one column per key
        title : str
            Title of the plot, also the stem of its file name
        directory : str [optional, default="."]
            Where the plot is saved

        Returns
        -------
        str
            The path of the saved plot
        """
        long_df = df.melt(id_vars="epoch", var_name="key", value_name="weight")
        plot = (ggplot(long_df, aes(x="epoch", y="weight"))
                + geom_line(aes(color="factor(key)"))
                + labs(color="key")
                + ggtitle(f"Weight traces ({title})")
                )
        path = os.path.join(directory, f"{title}-traces.png")
        plot.save(path, verbose=False)
        return path
