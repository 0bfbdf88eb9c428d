using System;

namespace ShopDemo.Web.Common
{
    public class PageBase
    {
        public string Title { get; set; }

        public void Trace(string message)
        {
        }
    }
}
